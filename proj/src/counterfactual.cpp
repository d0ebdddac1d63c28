#include "rulelens/counterfactual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace rulelens {
namespace {

std::vector<Term> subjects_with(const InferenceModel& m, const Term& predicate, const Term* value) {
    std::vector<Term> out;
    std::set<Term> seen;
    for (const Graph* g : {&m.base(), &m.inferred()}) {
        for (const Statement& s : g->statements()) {
            if (s.predicate != predicate || (value && s.object != *value)) continue;
            if (seen.insert(s.subject).second) out.push_back(s.subject);
        }
    }
    return out;
}

bool name_less(const Term& a, const Term& b) {
    if (a.local() != b.local()) return a.local() < b.local();
    return a.prefix() < b.prefix();
}

std::string describe_side(const Term& subject, const Term& predicate, const std::optional<Term>& value,
                          const LabelTable& lt) {
    if (!value) return subject.local() + " has no " + label(predicate, lt);
    return format_statement(Statement{subject, predicate, *value}, lt);
}

}  // namespace

const Feature* CaseRecord::find(const Term& predicate) const {
    auto it = std::find_if(features.begin(), features.end(),
                           [&](const Feature& f) { return f.predicate == predicate; });
    return it == features.end() ? nullptr : &*it;
}

CaseRecord case_record(const InferenceModel& m, const Term& subject, const Term& outcome_predicate,
                       std::optional<Term> outcome) {
    CaseRecord c{subject, subject_features(m, subject), Term::string("")};
    auto it = std::find_if(c.features.begin(), c.features.end(),
                           [&](const Feature& f) { return f.predicate == outcome_predicate; });
    if (it != c.features.end()) {
        if (!outcome) outcome = it->value;
        c.features.erase(it);
    }
    if (!outcome) {
        throw NotFoundError(subject.lexical() + " has no value for " + outcome_predicate.lexical());
    }
    c.outcome = std::move(*outcome);
    return c;
}

std::vector<CaseRecord> historical_cases(const InferenceModel& m, const Term& outcome_predicate,
                                         const Term& desired, const Term& exclude) {
    std::vector<CaseRecord> out;
    for (const Term& subject : subjects_with(m, outcome_predicate, &desired)) {
        if (subject == exclude) continue;
        out.push_back(case_record(m, subject, outcome_predicate, desired));
    }
    return out;
}

FeatureRanges feature_ranges(std::span<const CaseRecord> cases) {
    std::map<Term, std::pair<double, double>> bounds;
    for (const CaseRecord& c : cases) {
        for (const Feature& f : c.features) {
            if (!f.value.is_number()) continue;
            const double v = f.value.value();
            auto [it, inserted] = bounds.try_emplace(f.predicate, v, v);
            if (!inserted) {
                it->second.first = std::min(it->second.first, v);
                it->second.second = std::max(it->second.second, v);
            }
        }
    }
    FeatureRanges out;
    for (const auto& [predicate, b] : bounds) out.emplace(predicate, b.second - b.first);
    return out;
}

double feature_distance(const CaseRecord& a, const CaseRecord& b, const FeatureRanges& ranges) {
    double total = 0.0;
    for (const Feature& fa : a.features) {
        if (is_type_predicate(fa.predicate)) continue;
        const Feature* fb = b.find(fa.predicate);
        if (!fb) continue;
        if (fa.value.is_number() && fb->value.is_number()) {
            const double diff = std::fabs(fa.value.value() - fb->value.value());
            auto r = ranges.find(fa.predicate);
            if (r == ranges.end() || r->second == 0.0) {
                total += diff == 0.0 ? 0.0 : 1.0;
            } else {
                total += diff / r->second;
            }
        } else {
            total += fa.value == fb->value ? 0.0 : 1.0;
        }
    }
    return total;
}

std::size_t nearest_unlike_neighbor(const CaseRecord& query, std::span<const CaseRecord> candidates,
                                    const FeatureRanges& ranges) {
    if (candidates.empty()) throw PreconditionError("no candidate cases to choose a neighbor from");
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double d = feature_distance(query, candidates[i], ranges);
        if (d < best_distance || (d == best_distance && name_less(candidates[i].subject, candidates[best].subject))) {
            best = i;
            best_distance = d;
        }
    }
    return best;
}

CounterfactualValidationFailed::CounterfactualValidationFailed(CounterfactualExplanation e)
    : Error("applying " + e.neighbor.subject.local() + "'s attributes to " + e.query.subject.local() +
            " does not reach the desired outcome " + e.desired.lexical()),
      explanation_(std::move(e)) {}

Graph substitute_features(const Graph& base, const Term& subject, std::span<const FeatureChange> changes) {
    const auto change_for = [&](const Term& predicate) -> const FeatureChange* {
        auto it = std::find_if(changes.begin(), changes.end(),
                               [&](const FeatureChange& c) { return c.first == predicate; });
        return it == changes.end() ? nullptr : &*it;
    };
    Graph out(base.prefixes());
    std::set<Term> applied;
    for (const Statement& s : base.statements()) {
        const FeatureChange* change = s.subject == subject ? change_for(s.predicate) : nullptr;
        if (!change) {
            out.insert(s);
            continue;
        }
        if (applied.insert(s.predicate).second && change->second) {
            out.insert(Statement{subject, s.predicate, *change->second});
        }
    }
    for (const FeatureChange& c : changes) {
        if (!applied.contains(c.first) && c.second) out.insert(Statement{subject, c.first, *c.second});
    }
    return out;
}

bool outcome_reached(const InferenceModel& m, const Term& subject, const Term& outcome_predicate,
                     const Term& desired, const Term& current) {
    return m.contains(Statement{subject, outcome_predicate, desired}) &&
           !m.contains(Statement{subject, outcome_predicate, current});
}

CounterfactualExplanation counterfactual(const InferenceModel& m, const Statement& s, const Term& desired) {
    if (!m.contains(s)) {
        throw NotFoundError("statement not found in model: " + s.subject.lexical() + " " + s.predicate.lexical() +
                            " " + s.object.lexical());
    }
    if (s.object == desired) {
        throw PreconditionError("desired value " + desired.lexical() + " is already the current outcome");
    }
    const Term& subject = s.subject;
    const Term& outcome_predicate = s.predicate;

    CounterfactualExplanation c;
    c.query_statement = *m.find(s);
    c.desired = desired;
    c.query = case_record(m, subject, outcome_predicate, s.object);

    std::vector<CaseRecord> candidates = historical_cases(m, outcome_predicate, desired, subject);
    if (candidates.empty()) {
        throw NoHistoricalCases("no other subject has " + outcome_predicate.lexical() + " " + desired.lexical());
    }

    std::vector<CaseRecord> population{c.query};
    for (const Term& other : subjects_with(m, outcome_predicate, nullptr)) {
        if (other != subject) population.push_back(case_record(m, other, outcome_predicate));
    }
    const FeatureRanges ranges = feature_ranges(population);

    const std::size_t nearest = nearest_unlike_neighbor(c.query, candidates, ranges);
    c.neighbor = std::move(candidates[nearest]);
    c.distance = feature_distance(c.query, c.neighbor, ranges);

    for (const Feature& f : c.query.features) {
        const Feature* nf = c.neighbor.find(f.predicate);
        if (nf && nf->value == f.value) continue;
        c.differences.push_back({f.predicate, f.value, nf ? std::optional<Term>(nf->value) : std::nullopt,
                                 f.asserted && (!nf || nf->asserted)});
    }
    for (const Feature& nf : c.neighbor.features) {
        if (!c.query.find(nf.predicate)) c.differences.push_back({nf.predicate, std::nullopt, nf.value, nf.asserted});
    }

    std::vector<FeatureChange> all_changes;
    for (const CounterfactualDifference& d : c.differences) {
        if (!d.substitutable) continue;
        const FeatureChange change{d.predicate, d.neighbor_value};
        all_changes.push_back(change);
        const InferenceModel alone =
            infer(substitute_features(m.base(), subject, {&change, 1}), m.rules(), m.options());
        if (outcome_reached(alone, subject, outcome_predicate, desired, s.object)) c.flip_set.push_back(d);
    }

    if (!all_changes.empty()) {
        const InferenceModel changed = infer(substitute_features(m.base(), subject, all_changes), m.rules(), m.options());
        c.validated = outcome_reached(changed, subject, outcome_predicate, desired, s.object);
    }
    if (!c.validated) throw CounterfactualValidationFailed(std::move(c));
    return c;
}

std::string render_counterfactual(const CounterfactualExplanation& c, const LabelTable& lt) {
    const Term& you = c.query.subject;
    const Term& them = c.neighbor.subject;
    const Term& outcome_predicate = c.query_statement.predicate;

    std::string out = "To change the outcome for " + format_statement(c.query_statement, lt) +
                      ", you could look at these examples:\n\n";
    out += format_statement(Statement{them, outcome_predicate, c.neighbor.outcome}, lt) + " because:\n";
    for (const CounterfactualDifference& d : c.differences) {
        out += "  - Their " + describe_side(them, d.predicate, d.neighbor_value, lt) + " while your " +
               describe_side(you, d.predicate, d.query_value, lt) + "\n";
    }

    out += "\nMinimal change: ";
    if (c.differences.empty()) {
        out += "none; " + them.local() + " differs from " + you.local() + " only in " + label(outcome_predicate, lt);
    } else if (c.flip_set.empty()) {
        out += "no single change flips the outcome; combine the changes above";
    } else {
        for (std::size_t i = 0; i < c.flip_set.size(); ++i) {
            const CounterfactualDifference& d = c.flip_set[i];
            if (i) out += "; or ";
            out += d.neighbor_value ? "set " + label(d.predicate, lt) + " to " + label(*d.neighbor_value, lt)
                                    : "remove " + label(d.predicate, lt);
        }
    }
    return out + "\n";
}

}  // namespace rulelens
