#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rulelens/contrastive.hpp"
#include "rulelens/error.hpp"
#include "rulelens/inference.hpp"
#include "rulelens/labels.hpp"

namespace rulelens {

/// A subject reduced to its attributes and its value for one outcome
/// predicate. The outcome predicate never appears among `features`.
struct CaseRecord {
    Term subject;
    std::vector<Feature> features;
    Term outcome;

    const Feature* find(const Term& predicate) const;
};

/// Throws NotFoundError if the subject is unknown or, when `outcome` is not
/// given, has no value for `outcome_predicate`.
CaseRecord case_record(const InferenceModel& m, const Term& subject, const Term& outcome_predicate,
                       std::optional<Term> outcome = std::nullopt);

/// Every subject other than `exclude` that has `outcome_predicate` =
/// `desired`, in order of first appearance.
std::vector<CaseRecord> historical_cases(const InferenceModel& m, const Term& outcome_predicate,
                                         const Term& desired, const Term& exclude);

/// Numeric predicate → max − min over the given cases.
using FeatureRanges = std::map<Term, double>;
FeatureRanges feature_ranges(std::span<const CaseRecord> cases);

/// Normalized L1 distance over the predicates both cases have: numeric
/// pairs contribute |a − b| / range (a zero or unknown range counts 0 for
/// equal values, 1 otherwise), other pairs 0 if equal else 1. Type
/// predicates are skipped.
double feature_distance(const CaseRecord& a, const CaseRecord& b, const FeatureRanges& ranges);

/// Index of the closest candidate; ties go to the lexicographically
/// smallest subject local name. Throws PreconditionError when empty.
std::size_t nearest_unlike_neighbor(const CaseRecord& query, std::span<const CaseRecord> candidates,
                                    const FeatureRanges& ranges);

struct CounterfactualDifference {
    Term predicate;
    std::optional<Term> query_value;
    std::optional<Term> neighbor_value;
    /// Both sides asserted (or absent): the change can be applied to the
    /// base facts directly. Derived attributes are only ever recomputed.
    bool substitutable = false;

    friend bool operator==(const CounterfactualDifference&, const CounterfactualDifference&) = default;
};

struct CounterfactualExplanation {
    Statement query_statement;
    Term desired;
    CaseRecord query;
    CaseRecord neighbor;
    double distance = 0.0;
    /// Every attribute on which the two cases disagree, query order first.
    std::vector<CounterfactualDifference> differences;
    /// The differences that flip the outcome when applied on their own.
    std::vector<CounterfactualDifference> flip_set;
    /// Applying every substitutable difference reaches the desired outcome.
    bool validated = false;
};

class NoHistoricalCases : public Error {
public:
    using Error::Error;
};

/// Thrown when applying the neighbor's attributes does not reach the
/// desired outcome. Carries the explanation for diagnostics.
class CounterfactualValidationFailed : public Error {
public:
    explicit CounterfactualValidationFailed(CounterfactualExplanation e);
    const CounterfactualExplanation& explanation() const noexcept { return explanation_; }

private:
    CounterfactualExplanation explanation_;
};

/// Replaces the subject's base values for each predicate (removing them
/// when the new value is nullopt; appending when the subject had none).
using FeatureChange = std::pair<Term, std::optional<Term>>;
Graph substitute_features(const Graph& base, const Term& subject, std::span<const FeatureChange> changes);

/// `desired` is derived or asserted for the subject and `current` no longer is.
bool outcome_reached(const InferenceModel& m, const Term& subject, const Term& outcome_predicate,
                     const Term& desired, const Term& current);

/// Nearest-unlike-neighbor counterfactual for the outcome statement `s`.
///
/// The neighbor is the closest subject whose outcome is `desired`, with
/// ranges taken over every subject that has the outcome predicate. Each
/// substitutable difference is applied alone and re-inferred to build the
/// flip set; applying all of them validates the explanation.
///
/// Throws NotFoundError (unknown statement), PreconditionError (`desired`
/// equals the current value), NoHistoricalCases, and
/// CounterfactualValidationFailed.
CounterfactualExplanation counterfactual(const InferenceModel& m, const Statement& s, const Term& desired);

std::string render_counterfactual(const CounterfactualExplanation& c, const LabelTable& lt);

}  // namespace rulelens
