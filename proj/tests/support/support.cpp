#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rulelens/builtins.hpp"
#include "rulelens/triples.hpp"

#ifndef RULELENS_GOLDEN_DIR
#error "RULELENS_GOLDEN_DIR must be defined"
#endif

namespace rulelens::testing {
namespace {

std::string describe(const Statement& s) { return statement_lexical(s); }

std::set<Statement> closure(const InferenceModel& m) {
    std::set<Statement> out(m.base().statements().begin(), m.base().statements().end());
    out.insert(m.inferred().statements().begin(), m.inferred().statements().end());
    return out;
}

Graph graph_of(const PrefixTable& prefixes, const std::vector<Statement>& statements) {
    Graph g(prefixes);
    for (const Statement& s : statements) g.insert(s);
    return g;
}

const std::vector<std::string>& fixture_ids() {
    static const std::vector<std::string> ids{"loan", "transitive", "diet"};
    return ids;
}

}  // namespace

Loaded load(const std::string& id) {
    Fixture f = load_fixture(id);
    InferenceModel m = infer(f.graph, f.rules.rules);
    return {std::move(f), std::move(m)};
}

std::string canonical_whitespace(const std::string& text) {
    std::vector<std::string> kept;
    bool pending_blank = false;
    for (std::string line : lines(text)) {
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        if (line.empty()) {
            pending_blank = !kept.empty();
            continue;
        }
        if (pending_blank) kept.emplace_back();
        pending_blank = false;
        kept.push_back(std::move(line));
    }
    std::string out;
    for (const std::string& l : kept) out += l + "\n";
    return out;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string read_golden(const std::string& name) { return read_file(std::filesystem::path(RULELENS_GOLDEN_DIR) / name); }

Term ex(const std::string& local) { return Term::iri("ex", local); }

Statement st(const std::string& s, const std::string& p, Term o) { return {ex(s), ex(p), std::move(o)}; }

// ---- nearest-unlike-neighbor oracle -------------------------------------

std::map<std::string, double> oracle_ranges(const std::vector<OracleCase>& population) {
    std::map<std::string, double> lo, hi;
    for (const OracleCase& c : population) {
        for (const auto& [p, v] : c.features) {
            if (!std::holds_alternative<double>(v)) continue;
            const double x = std::get<double>(v);
            lo[p] = lo.contains(p) ? std::min(lo[p], x) : x;
            hi[p] = hi.contains(p) ? std::max(hi[p], x) : x;
        }
    }
    std::map<std::string, double> out;
    for (const auto& [p, l] : lo) out[p] = hi[p] - l;
    return out;
}

double oracle_distance(const OracleCase& a, const OracleCase& b, const std::map<std::string, double>& ranges) {
    double sum = 0.0;
    for (const auto& [p, va] : a.features) {
        if (p == "type") continue;
        auto it = b.features.find(p);
        if (it == b.features.end()) continue;
        const OracleValue& vb = it->second;
        const bool numeric = std::holds_alternative<double>(va) && std::holds_alternative<double>(vb);
        if (!numeric) {
            sum += va == vb ? 0.0 : 1.0;
            continue;
        }
        const double gap = std::abs(std::get<double>(va) - std::get<double>(vb));
        auto r = ranges.find(p);
        const double range = r == ranges.end() ? 0.0 : r->second;
        sum += range > 0.0 ? gap / range : (gap == 0.0 ? 0.0 : 1.0);
    }
    return sum;
}

std::size_t oracle_nearest(const OracleCase& q, const std::vector<OracleCase>& candidates,
                           const std::map<std::string, double>& ranges) {
    std::vector<std::size_t> idx(candidates.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
        const double dx = oracle_distance(q, candidates[x], ranges);
        const double dy = oracle_distance(q, candidates[y], ranges);
        if (dx != dy) return dx < dy;
        return candidates[x].name < candidates[y].name;
    });
    return idx.front();
}

CaseRecord to_case_record(const OracleCase& c) {
    CaseRecord r;
    r.subject = ex(c.name);
    r.outcome = Term::string("outcome");
    for (const auto& [p, v] : c.features) {
        Term value = std::holds_alternative<double>(v) ? Term::number(std::get<double>(v), NumberShape::Decimal)
                                                       : Term::string(std::get<std::string>(v));
        r.features.push_back({ex(p), std::move(value), true});
    }
    return r;
}

std::vector<OracleCase> random_cases(std::mt19937_64& rng, std::size_t max_cases, std::size_t max_features) {
    static const std::vector<std::string> names{"ava", "ben", "cy", "dee", "eve", "fox", "gil", "hal", "ivy", "jo"};
    static const std::vector<std::string> words{"red", "green", "blue"};
    std::uniform_int_distribution<std::size_t> n_cases(2, max_cases), n_features(1, max_features);
    std::uniform_int_distribution<int> small(0, 6), coin(0, 3);

    const std::size_t nf = n_features(rng);
    std::vector<bool> numeric(nf);
    for (std::size_t f = 0; f < nf; ++f) numeric[f] = coin(rng) != 0;

    std::vector<std::string> pool = names;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<OracleCase> cases(n_cases(rng));
    for (std::size_t i = 0; i < cases.size(); ++i) {
        cases[i].name = pool[i];
        for (std::size_t f = 0; f < nf; ++f) {
            if (coin(rng) == 0 && f > 0) continue;  // sometimes missing
            const std::string p = "p" + std::to_string(f);
            if (numeric[f]) {
                cases[i].features[p] = small(rng) * 0.5;
            } else {
                cases[i].features[p] = words[small(rng) % words.size()];
            }
        }
    }
    return cases;
}

// ---- property suites ----------------------------------------------------

std::vector<std::string> check_fixpoint_properties(std::uint64_t seed, int rounds) {
    std::vector<std::string> failures;
    std::mt19937_64 rng(seed);
    std::vector<Fixture> fixtures;
    for (const std::string& id : fixture_ids()) fixtures.push_back(load_fixture(id));

    for (int r = 0; r < rounds; ++r) {
        const Fixture& f = fixtures[static_cast<std::size_t>(r) % fixtures.size()];
        std::bernoulli_distribution keep(std::uniform_real_distribution<double>(0.3, 1.0)(rng));
        std::vector<Statement> larger, smaller;
        for (const Statement& s : f.graph.statements()) {
            if (!keep(rng)) continue;
            larger.push_back(s);
            if (keep(rng)) smaller.push_back(s);
        }
        const std::string tag = f.manifest.id + " round " + std::to_string(r) + ": ";

        const InferenceModel big = infer(graph_of(f.graph.prefixes(), larger), f.rules.rules);
        const InferenceModel small = infer(graph_of(f.graph.prefixes(), smaller), f.rules.rules);
        const std::set<Statement> big_closure = closure(big), small_closure = closure(small);

        // Re-running on a closure derives nothing new.
        std::vector<Statement> closed(big.base().statements().begin(), big.base().statements().end());
        closed.insert(closed.end(), big.inferred().statements().begin(), big.inferred().statements().end());
        const InferenceModel again = infer(graph_of(f.graph.prefixes(), closed), f.rules.rules);
        if (!again.inferred().empty()) failures.push_back(tag + "closure is not a fixpoint");
        if (closure(again) != big_closure) failures.push_back(tag + "closure changed on re-inference");

        if (!std::includes(big_closure.begin(), big_closure.end(), small_closure.begin(), small_closure.end())) {
            failures.push_back(tag + "fewer facts derived something more facts did not");
        }
    }
    return failures;
}

std::vector<std::string> check_derivation_soundness() {
    std::vector<std::string> failures;
    for (const std::string& id : fixture_ids()) {
        const Loaded l = load(id);
        const InferenceModel& m = l.model;
        for (const Statement& s : m.base().statements()) {
            if (!m.derivations(s).empty()) failures.push_back(id + ": asserted statement has derivations: " + describe(s));
        }
        for (const Statement& s : m.inferred().statements()) {
            const auto& ds = m.derivations(s);
            if (ds.empty()) failures.push_back(id + ": no derivation for " + describe(s));
            for (const Derivation& d : ds) {
                const std::string tag = id + ": " + describe(s) + ": ";
                if (d.conclusion != s) failures.push_back(tag + "conclusion mismatch");
                if (d.rule_index >= m.rules().size()) {
                    failures.push_back(tag + "rule index out of range");
                    continue;
                }
                const Rule& rule = m.rules()[d.rule_index];
                std::size_t k = 0;
                for (const Clause& c : rule.body) {
                    if (const auto* p = std::get_if<Pattern>(&c)) {
                        const auto premise = instantiate(*p, d.bindings);
                        if (!premise) {
                            failures.push_back(tag + "body pattern does not instantiate");
                        } else if (k >= d.premises.size() || d.premises[k] != *premise) {
                            failures.push_back(tag + "premise " + std::to_string(k) + " differs from its pattern");
                        } else if (!m.contains(*premise)) {
                            failures.push_back(tag + "premise not in model: " + describe(*premise));
                        }
                        ++k;
                    } else {
                        const auto& call = std::get<BuiltinCall>(c);
                        if (!eval_builtin(call.name, call.args, d.bindings).passed) {
                            failures.push_back(tag + call.name + " does not pass under the recorded bindings");
                        }
                    }
                }
                if (k != d.premises.size()) failures.push_back(tag + "premise count mismatch");
                const bool produces = std::any_of(rule.head.begin(), rule.head.end(), [&](const Pattern& h) {
                    return instantiate(h, d.bindings) == std::optional<Statement>(s);
                });
                if (!produces) failures.push_back(tag + "head does not yield the conclusion");
            }
        }

        // Kahn's algorithm over premise → conclusion edges of canonical derivations.
        std::unordered_map<Statement, int> indegree;
        std::unordered_map<Statement, std::vector<Statement>> out_edges;
        for (const Statement& s : m.inferred().statements()) {
            indegree.try_emplace(s, 0);
            for (const Statement& p : m.derivations(s).front().premises) {
                if (!m.inferred().contains(p)) continue;
                out_edges[p].push_back(s);
                ++indegree[s];
            }
        }
        std::deque<Statement> ready;
        for (const auto& [s, n] : indegree)
            if (n == 0) ready.push_back(s);
        std::size_t visited = 0;
        while (!ready.empty()) {
            Statement s = ready.front();
            ready.pop_front();
            ++visited;
            for (const Statement& t : out_edges[s])
                if (--indegree[t] == 0) ready.push_back(t);
        }
        if (visited != indegree.size()) failures.push_back(id + ": canonical derivations contain a cycle");
    }
    return failures;
}

Rule random_rule(std::mt19937_64& rng, int index) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    static const std::vector<std::string> strings{"Eligible", "Not Eligible", "0.5", "it's", "say \"hi\"", "", "x-y_z"};
    static const std::vector<std::string> guards{"greaterThan", "lessThan", "ge", "le", "equal", "notEqual"};
    static const std::vector<std::string> functions{"quotient", "sum", "difference", "product"};

    auto constant = [&]() -> Term {
        switch (pick(4)) {
            case 0: return ex("c" + std::to_string(pick(5)));
            case 1: return Term::number(pick(2001) - 1000, NumberShape::Integer);
            case 2: return Term::number(std::uniform_real_distribution<double>(-1e6, 1e6)(rng), NumberShape::Decimal);
            default: return Term::string(strings[pick(static_cast<int>(strings.size()))]);
        }
    };

    Rule r;
    r.name = "R" + std::to_string(index) + (pick(2) ? "_gen" : "");
    std::vector<std::string> bound;
    int fresh = 0;
    auto var = [&](bool reuse) {
        if (reuse && !bound.empty() && pick(2)) return bound[pick(static_cast<int>(bound.size()))];
        std::string v = (pick(2) ? "v" : "x_") + std::to_string(fresh++);
        bound.push_back(v);
        return v;
    };

    const int patterns = 1 + pick(3);
    for (int i = 0; i < patterns; ++i) {
        RuleTerm s = pick(4) ? RuleTerm::variable(var(true)) : RuleTerm::constant(ex("s" + std::to_string(pick(3))));
        RuleTerm p = pick(5) ? RuleTerm::constant(ex("p" + std::to_string(pick(4)))) : RuleTerm::variable(var(false));
        RuleTerm o = pick(2) ? RuleTerm::variable(var(true)) : RuleTerm::constant(constant());
        r.body.emplace_back(Pattern{std::move(s), std::move(p), std::move(o)});
    }
    auto input = [&]() {
        if (!bound.empty() && pick(3)) return RuleTerm::variable(bound[pick(static_cast<int>(bound.size()))]);
        return RuleTerm::constant(Term::number(pick(100), pick(2) ? NumberShape::Integer : NumberShape::Decimal));
    };
    const int builtins = pick(3);
    for (int i = 0; i < builtins; ++i) {
        if (pick(2)) {
            r.body.emplace_back(BuiltinCall{guards[pick(static_cast<int>(guards.size()))], {input(), input()}});
        } else {
            RuleTerm a = input(), b = input();
            r.body.emplace_back(
                BuiltinCall{functions[pick(static_cast<int>(functions.size()))], {a, b, RuleTerm::variable(var(false))}});
        }
    }
    const int heads = 1 + pick(2);
    for (int i = 0; i < heads; ++i) {
        // Head variables must be bound by the body; with none bound, use constants.
        const bool any = !bound.empty();
        RuleTerm s = any && pick(4) ? RuleTerm::variable(bound[pick(static_cast<int>(bound.size()))])
                                    : RuleTerm::constant(ex("h" + std::to_string(pick(3))));
        RuleTerm o = any && pick(2) ? RuleTerm::variable(bound[pick(static_cast<int>(bound.size()))])
                                    : RuleTerm::constant(constant());
        r.head.push_back(Pattern{std::move(s), RuleTerm::constant(ex("q" + std::to_string(pick(3)))), std::move(o)});
    }
    return r;
}

std::vector<std::string> check_round_trips(std::uint64_t seed, int generated) {
    std::vector<std::string> failures;
    for (const std::string& id : fixture_ids()) {
        const Fixture f = load_fixture(id);
        const Graph g = parse_triples(read_file(f.manifest.facts_path));
        const std::string facts_text = serialize_triples(g);
        if (parse_triples(facts_text) != g) failures.push_back(id + ": facts do not round-trip");
        if (serialize_triples(parse_triples(facts_text)) != facts_text) failures.push_back(id + ": facts text not stable");

        const RuleFile rf = parse_rule_file(read_file(f.manifest.rules_path));
        const RuleFile back = parse_rule_file(serialize_rule_file(rf.prefixes, rf.rules));
        if (back.rules != rf.rules || back.prefixes != rf.prefixes) failures.push_back(id + ": rules file does not round-trip");
        for (const Rule& r : rf.rules) {
            if (parse_rules(format_rule(r)) != std::vector<Rule>{r}) failures.push_back(id + ": rule " + r.name + " does not round-trip");
        }
    }

    std::mt19937_64 rng(seed);
    for (int i = 0; i < generated; ++i) {
        const Rule r = random_rule(rng, i);
        const std::string text = format_rule(r);
        try {
            const std::vector<Rule> parsed = parse_rules(text);
            if (parsed.size() != 1 || parsed.front() != r) {
                failures.push_back("generated rule does not round-trip: " + text);
            } else if (format_rule(parsed.front()) != text) {
                failures.push_back("generated rule text not stable: " + text);
            }
        } catch (const Error& e) {
            failures.push_back("generated rule rejected: " + text + ": " + e.what());
        }
    }
    return failures;
}

std::vector<std::string> check_nun_oracle(std::uint64_t seed, int rounds) {
    std::vector<std::string> failures;
    std::mt19937_64 rng(seed);
    for (int r = 0; r < rounds; ++r) {
        const std::vector<OracleCase> cases = random_cases(rng, 8, 5);
        const OracleCase& query = cases.front();
        const std::vector<OracleCase> candidates(cases.begin() + 1, cases.end());

        std::vector<CaseRecord> records;
        for (const OracleCase& c : cases) records.push_back(to_case_record(c));
        const std::vector<CaseRecord> candidate_records(records.begin() + 1, records.end());

        const auto expected_ranges = oracle_ranges(cases);
        const FeatureRanges ranges = feature_ranges(records);
        const std::string tag = "round " + std::to_string(r) + ": ";
        if (ranges.size() != expected_ranges.size()) failures.push_back(tag + "range count differs");
        for (const auto& [p, v] : expected_ranges) {
            auto it = ranges.find(ex(p));
            if (it == ranges.end() || it->second != v) failures.push_back(tag + "range of " + p + " differs");
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const double want = oracle_distance(query, candidates[i], expected_ranges);
            const double got = feature_distance(records.front(), candidate_records[i], ranges);
            if (std::abs(want - got) > 1e-12) {
                failures.push_back(tag + "distance to " + candidates[i].name + " is " + std::to_string(got) +
                                   ", oracle " + std::to_string(want));
            }
        }
        const std::size_t want = oracle_nearest(query, candidates, expected_ranges);
        const std::size_t got = nearest_unlike_neighbor(records.front(), candidate_records, ranges);
        if (want != got) {
            failures.push_back(tag + "neighbor " + candidates[got].name + ", oracle " + candidates[want].name);
        }
    }
    return failures;
}

namespace {

/// Base facts with the subject's values for the given predicates replaced,
/// built without the library's substitution helper.
Graph substituted(const Graph& base, const Term& subject, const std::vector<CounterfactualDifference>& changes) {
    std::set<Term> touched;
    for (const auto& c : changes) touched.insert(c.predicate);
    Graph g(base.prefixes());
    for (const Statement& s : base.statements()) {
        if (s.subject == subject && touched.contains(s.predicate)) continue;
        g.insert(s);
    }
    for (const auto& c : changes) {
        if (c.neighbor_value) g.insert(Statement{subject, c.predicate, *c.neighbor_value});
    }
    return g;
}

bool reaches(const Graph& g, const std::vector<Rule>& rules, const Statement& current, const Term& desired) {
    const InferenceModel m = infer(g, rules);
    return m.contains(Statement{current.subject, current.predicate, desired}) && !m.contains(current);
}

void verify_counterfactual(const InferenceModel& m, const Statement& s, const Term& desired, const std::string& tag,
                           std::vector<std::string>& failures, int& validated) {
    CounterfactualExplanation c;
    try {
        c = counterfactual(m, s, desired);
    } catch (const NoHistoricalCases&) {
        return;
    } catch (const CounterfactualValidationFailed&) {
        return;
    }
    if (!c.validated) {
        failures.push_back(tag + "returned without validation");
        return;
    }
    ++validated;
    const Graph& base = m.base();
    std::vector<CounterfactualDifference> substitutable;
    for (const auto& d : c.differences)
        if (d.substitutable) substitutable.push_back(d);
    if (!reaches(substituted(base, s.subject, substitutable), m.rules(), s, desired)) {
        failures.push_back(tag + "applying every substitutable difference does not reach " + desired.lexical());
    }
    for (const auto& d : c.differences) {
        const bool in_flip = std::find(c.flip_set.begin(), c.flip_set.end(), d) != c.flip_set.end();
        const bool flips = d.substitutable && reaches(substituted(base, s.subject, {d}), m.rules(), s, desired);
        if (in_flip != flips) failures.push_back(tag + "flip set wrong about " + d.predicate.lexical());
    }
    for (const auto& d : c.flip_set) {
        if (std::find(c.differences.begin(), c.differences.end(), d) == c.differences.end()) {
            failures.push_back(tag + "flip set entry is not a difference");
        }
    }
}

void verify_all_outcomes(const InferenceModel& m, const std::string& name, std::vector<std::string>& failures,
                         int& validated) {
    for (const Statement& s : m.inferred().statements()) {
        if (!s.object.is_string()) continue;
        std::set<Term> values;
        for (const Statement& t : list_statements(m, Which::All))
            if (t.predicate == s.predicate && t.object != s.object) values.insert(t.object);
        for (const Term& desired : values) {
            verify_counterfactual(m, s, desired, name + ": " + statement_lexical(s) + " -> " + desired.lexical() + ": ",
                                  failures, validated);
        }
    }
}

}  // namespace

std::vector<std::string> check_counterfactual_validity(std::uint64_t seed, int rounds, int* validated_count) {
    std::vector<std::string> failures;
    int validated = 0;
    for (const std::string& id : fixture_ids()) verify_all_outcomes(load(id).model, id, failures, validated);

    const Fixture loan = load_fixture("loan");
    std::mt19937_64 rng(seed);
    for (int r = 0; r < rounds; ++r) {
        std::ostringstream facts;
        facts << "@prefix ex: <http://example.org/loan#> .\n";
        const int n = std::uniform_int_distribution<int>(3, 6)(rng);
        for (int i = 0; i < n; ++i) {
            const std::string a = "ex:a" + std::to_string(i);
            facts << a << " ex:type ex:Person .\n"
                  << a << " ex:creditScore " << std::uniform_int_distribution<int>(550, 750)(rng) << " .\n"
                  << a << " ex:monthlyDebt " << std::uniform_int_distribution<int>(5, 30)(rng) * 100 << ".0 .\n"
                  << a << " ex:monthlyIncome " << std::uniform_int_distribution<int>(6, 16)(rng) * 500 << ".0 .\n";
        }
        const InferenceModel m = infer(parse_triples(facts.str()), loan.rules.rules);
        verify_all_outcomes(m, "variant " + std::to_string(r), failures, validated);
    }
    if (validated_count) *validated_count = validated;
    return failures;
}

}  // namespace rulelens::testing
