#include "rulelens/trace.hpp"

#include <algorithm>
#include <set>

#include "rulelens/error.hpp"

namespace rulelens {
namespace {

std::string display_term(const RuleTerm& t) {
    if (t.is_variable()) return "?" + t.variable_name();
    const Term& c = t.constant_term();
    switch (c.kind()) {
        case Term::Kind::Iri: return c.local();
        case Term::Kind::Number: return "'" + format_number(c.value(), c.shape()) + "'";
        case Term::Kind::String: return "'" + c.text() + "'";
    }
    return {};
}

std::string display_pattern(const Pattern& p) {
    return "(" + display_term(p.subject) + " " + display_term(p.predicate) + " " + display_term(p.object) + ")";
}

std::string display_clause(const Clause& c) {
    if (const auto* p = std::get_if<Pattern>(&c)) return display_pattern(*p);
    const auto& call = std::get<BuiltinCall>(c);
    std::string out = call.name + "(";
    for (std::size_t i = 0; i < call.args.size(); ++i) {
        if (i) out += ' ';
        out += display_term(call.args[i]);
    }
    return out + ")";
}

std::string display_head(const Rule& r) {
    std::string out;
    for (const Pattern& h : r.head) {
        if (!out.empty()) out += ' ';
        out += display_pattern(h);
    }
    return out;
}

std::shared_ptr<const TraceNode> build(const InferenceModel& m, const Statement& s,
                                       std::set<Statement>& path) {
    auto node = std::make_shared<TraceNode>();
    node->conclusion = *m.find(s);
    if (m.base().contains(s)) {
        node->asserted = true;
        return node;
    }
    const Derivation& d = m.derivations(s).front();
    node->rule = m.rules()[d.rule_index];
    path.insert(s);
    for (const Statement& premise : d.premises) {
        TraceMatch match{premise, nullptr, false};
        if (!m.base().contains(premise)) {
            if (path.contains(premise)) {
                match.already_explained = true;
            } else {
                match.nested = build(m, premise, path);
            }
        }
        node->matches.push_back(std::move(match));
    }
    path.erase(s);
    return node;
}

std::string spaces(std::size_t n) { return std::string(n, ' '); }

void render(const TraceNode& t, const LabelTable& lt, std::size_t indent, std::string& out) {
    out += spaces(indent) + "Conclusion: " + format_statement(t.conclusion, lt) + "\n";
    for (const TraceMatch& m : t.matches) {
        out += spaces(indent + 2) + "Match: " + format_statement(m.statement, lt);
        if (m.already_explained) out += " (already explained)";
        out += "\n";
    }
    bool nested = false;
    for (const TraceMatch& m : t.matches) {
        if (!m.nested) continue;
        out += "\n";
        render(*m.nested, lt, indent + 2, out);
        nested = true;
    }
    if (nested) out += "\n";
    if (t.rule) out += spaces(indent + 2) + "Rule: " + display_rule_block(*t.rule, indent + 2) + "\n";
}

}  // namespace

TraceNode trace(const InferenceModel& m, const Statement& s) {
    if (!m.contains(s)) {
        throw NotFoundError("statement not found in model: " + s.subject.lexical() + " " + s.predicate.lexical() +
                            " " + s.object.lexical());
    }
    std::set<Statement> path;
    return *build(m, s, path);
}

std::vector<TraceNode> trace_all(const InferenceModel& m) {
    std::vector<TraceNode> out;
    for (const Statement& s : m.inferred().statements()) out.push_back(trace(m, s));
    return out;
}

std::size_t trace_depth(const TraceNode& t) {
    if (t.asserted) return 0;
    std::size_t deepest = 0;
    for (const TraceMatch& m : t.matches) {
        if (m.nested) deepest = std::max(deepest, trace_depth(*m.nested));
    }
    return deepest + 1;
}

std::string render_trace(const TraceNode& t, const LabelTable& lt) {
    if (t.asserted) return "Conclusion: " + format_statement(t.conclusion, lt) + " (asserted)\n";
    std::string out;
    render(t, lt, 0, out);
    return out;
}

std::string display_rule_block(const Rule& r, std::size_t indent) {
    std::string out = "[" + r.name + ":\n";
    for (const Clause& c : r.body) out += spaces(indent + 2) + display_clause(c) + "\n";
    return out + spaces(indent + 2) + "-> " + display_head(r) + "]";
}

std::string display_rule_inline(const Rule& r) {
    std::string out = "[ " + r.name + ":";
    for (const Clause& c : r.body) out += " " + display_clause(c);
    return out + " -> " + display_head(r) + " ]";
}

}  // namespace rulelens
