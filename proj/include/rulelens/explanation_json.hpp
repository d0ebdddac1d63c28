#pragma once

// JSON forms of statements and explanations, and the one dispatch point
// the CLI and the HTTP API share for producing an explanation.

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rulelens/contextual.hpp"
#include "rulelens/contrastive.hpp"
#include "rulelens/counterfactual.hpp"
#include "rulelens/trace.hpp"

namespace rulelens {

/// {"s": "ex:applicant1", "p": "ex:loanEligibility", "o": "\"Not Eligible\""}
nlohmann::json statement_json(const Statement& s);

nlohmann::json trace_json(const TraceNode& t, const LabelTable& lt);
nlohmann::json contextual_json(const ContextualExplanation& c);
nlohmann::json contrastive_json(const ContrastiveExplanation& c, const LabelTable& lt);
nlohmann::json counterfactual_json(const CounterfactualExplanation& c, const LabelTable& lt);

enum class ExplanationType { Trace, Contextual, Contrastive, Counterfactual };

std::optional<ExplanationType> parse_explanation_type(std::string_view name);
std::string_view explanation_type_name(ExplanationType t);

/// An explanation type was requested without the input it needs.
class MissingOption : public Error {
public:
    using Error::Error;
};

struct ExplainRequest {
    ExplanationType type = ExplanationType::Trace;
    Statement statement;
    /// Contrastive: the subject to compare against. Defaults to the
    /// statement's subject when `alt_model` is given.
    std::optional<Term> against;
    /// Contrastive: model holding `against`; null means the same model.
    const InferenceModel* alt_model = nullptr;
    /// Counterfactual: the outcome value wanted instead.
    std::optional<Term> desired;
};

struct ExplainResult {
    std::string text;
    nlohmann::json structured;
};

/// Throws NotFoundError if the statement is not in `m`, MissingOption, and
/// whatever the chosen explainer throws.
ExplainResult run_explanation(const InferenceModel& m, const LabelTable& lt, const ExplainRequest& r);

}  // namespace rulelens
