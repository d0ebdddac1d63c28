#include "rulelens/inference.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <set>
#include <string_view>

#include "rulelens/builtins.hpp"
#include "rulelens/error.hpp"

namespace rulelens {
namespace {

bool unify(const RuleTerm& t, const Term& value, Bindings& b) {
    if (!t.is_variable()) return t.constant_term() == value;
    auto [it, inserted] = b.try_emplace(t.variable_name(), value);
    return inserted || it->second == value;
}

class Matcher {
public:
    Matcher(const Graph& base, const std::vector<Rule>& rules, const InferenceOptions& options,
            Graph& inferred, std::unordered_map<Statement, std::vector<Derivation>>& derivations,
            std::vector<std::string>& diagnostics)
        : base_(base), rules_(rules), options_(options), inferred_(inferred), derivations_(derivations),
          diagnostics_(diagnostics) {
        for (const Statement& s : base.statements()) add_candidate(s);
    }

    void run() {
        for (;;) {
            const std::size_t before = inferred_.size();
            for (std::size_t r = 0; r < rules_.size(); ++r) {
                std::vector<Statement> premises;
                match(r, 0, Bindings{}, premises);
            }
            if (inferred_.size() == before) break;
        }
    }

private:
    void add_candidate(const Statement& s) {
        by_predicate_[s.predicate].push_back(all_.size());
        all_.push_back(s);
    }

    void note(std::string message) {
        if (seen_diagnostics_.insert(message).second) diagnostics_.push_back(std::move(message));
    }

    void match(std::size_t rule_index, std::size_t clause_index, const Bindings& b,
               std::vector<Statement>& premises) {
        const Rule& rule = rules_[rule_index];
        if (clause_index == rule.body.size()) {
            emit(rule_index, b, premises);
            return;
        }
        const Clause& clause = rule.body[clause_index];

        if (const auto* call = std::get_if<BuiltinCall>(&clause)) {
            BuiltinOutcome out;
            try {
                out = eval_builtin(call->name, call->args, b);
            } catch (const BuiltinError& e) {
                note(rule.name + ": " + e.what());
                return;
            }
            if (!out.diagnostic.empty()) note(rule.name + ": " + out.diagnostic);
            if (out.passed) match(rule_index, clause_index + 1, out.bindings, premises);
            return;
        }

        const auto& pattern = std::get<Pattern>(clause);
        const auto try_candidate = [&](std::size_t idx) {
            const Statement s = all_[idx];  // copy: all_ may grow during recursion
            Bindings next = b;
            if (!unify(pattern.subject, s.subject, next) || !unify(pattern.predicate, s.predicate, next) ||
                !unify(pattern.object, s.object, next)) {
                return;
            }
            premises.push_back(s);
            match(rule_index, clause_index + 1, next, premises);
            premises.pop_back();
        };

        if (auto predicate = resolve(pattern.predicate, b)) {
            auto it = by_predicate_.find(*predicate);
            if (it == by_predicate_.end()) return;
            // Map nodes are stable; the vector may grow while we iterate.
            const std::vector<std::size_t>& bucket = it->second;
            for (std::size_t k = 0; k < bucket.size(); ++k) try_candidate(bucket[k]);
        } else {
            for (std::size_t idx = 0; idx < all_.size(); ++idx) try_candidate(idx);
        }
    }

    void emit(std::size_t rule_index, const Bindings& b, const std::vector<Statement>& premises) {
        const Rule& rule = rules_[rule_index];
        for (const Pattern& head : rule.head) {
            auto conclusion = instantiate(head, b);
            if (!conclusion) {
                note(rule.name + ": head instantiates to a statement with a literal subject or predicate");
                continue;
            }
            if (base_.contains(*conclusion)) continue;

            auto& list = derivations_[*conclusion];
            const bool known = std::any_of(list.begin(), list.end(), [&](const Derivation& d) {
                return d.rule_index == rule_index && d.bindings == b;
            });
            if (known) continue;
            list.push_back(Derivation{*conclusion, rule_index, b, premises});

            if (inferred_.insert(*conclusion)) {
                add_candidate(*conclusion);
                if (inferred_.size() > options_.max_inferred) throw InferenceCapExceeded(options_.max_inferred);
            }
        }
    }

    const Graph& base_;
    const std::vector<Rule>& rules_;
    const InferenceOptions& options_;
    Graph& inferred_;
    std::unordered_map<Statement, std::vector<Derivation>>& derivations_;
    std::vector<std::string>& diagnostics_;

    std::vector<Statement> all_;
    std::map<Term, std::vector<std::size_t>> by_predicate_;
    std::set<std::string> seen_diagnostics_;
};

}  // namespace

InferenceOptions options_from_env() {
    InferenceOptions options;
    if (const char* env = std::getenv("RULELENS_MAX_INFERRED")) {
        std::string_view text(env);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) options.max_inferred = value;
    }
    return options;
}

const std::vector<Derivation>& InferenceModel::derivations(const Statement& s) const {
    static const std::vector<Derivation> kNone;
    auto it = derivations_.find(s);
    return it == derivations_.end() ? kNone : it->second;
}

std::size_t InferenceModel::derivation_count() const noexcept {
    std::size_t n = 0;
    for (const auto& [_, list] : derivations_) n += list.size();
    return n;
}

InferenceModel infer(Graph base, std::vector<Rule> rules, InferenceOptions options) {
    InferenceModel m;
    m.base_ = std::move(base);
    m.rules_ = std::move(rules);
    m.options_ = options;
    m.inferred_ = Graph(m.base_.prefixes());
    Matcher matcher(m.base_, m.rules_, m.options_, m.inferred_, m.derivations_, m.diagnostics_);
    matcher.run();
    return m;
}

bool is_asserted(const InferenceModel& m, const Statement& s) {
    if (m.base().contains(s)) return true;
    if (m.inferred().contains(s)) return false;
    throw NotFoundError("statement not found in model: " + s.subject.lexical() + " " + s.predicate.lexical() +
                        " " + s.object.lexical());
}

const std::vector<Derivation>& derivations_of(const InferenceModel& m, const Statement& s) {
    if (is_asserted(m, s)) {
        throw PreconditionError("statement is asserted, not inferred: " + s.subject.lexical() + " " +
                                s.predicate.lexical() + " " + s.object.lexical());
    }
    return m.derivations(s);
}

std::vector<Statement> list_statements(const InferenceModel& m, Which which) {
    std::vector<Statement> out;
    if (which != Which::Inferred) out.assign(m.base().statements().begin(), m.base().statements().end());
    if (which != Which::Base) {
        out.insert(out.end(), m.inferred().statements().begin(), m.inferred().statements().end());
    }
    return out;
}

}  // namespace rulelens
