#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rulelens/inference.hpp"
#include "rulelens/labels.hpp"

namespace rulelens {

/// Predicates whose local name is `type` (`ex:type`, `rdf:type`). They
/// classify a subject rather than describe it and are left out of
/// comparisons and distances.
bool is_type_predicate(const Term& predicate);

/// One attribute of a subject as seen in a model.
struct Feature {
    Term predicate;
    Term value;
    bool asserted;
};

/// The subject's attributes, one per predicate (the first value found),
/// in base order then inferred order, type predicates excluded. Throws
/// NotFoundError if the subject has no statements.
std::vector<Feature> subject_features(const InferenceModel& m, const Term& subject);

struct ValueDifference {
    Term predicate;
    std::optional<Term> this_value;  // nullopt: only the alternate has it
    std::optional<Term> alternate_value;

    friend bool operator==(const ValueDifference&, const ValueDifference&) = default;
};

struct ContrastiveExplanation {
    Term subject_this;
    Term subject_alt;
    /// Attributes with equal values, phrased with subject_this.
    std::vector<Statement> similarities;
    std::vector<ValueDifference> differences;
};

/// Compares one subject projected from each model. Order: predicates by
/// first appearance on subject_this, then those only subject_alt has.
ContrastiveExplanation contrastive(const InferenceModel& m_this, const Term& subject_this,
                                   const InferenceModel& m_alt, const Term& subject_alt);

std::string render_contrastive(const ContrastiveExplanation& c, const LabelTable& lt);

/// Differences-line value form: decimal-shaped numbers get exactly two
/// fraction digits, everything else its usual label.
std::string difference_value(const Term& t, const LabelTable& lt);

}  // namespace rulelens
