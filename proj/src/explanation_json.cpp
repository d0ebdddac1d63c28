#include "rulelens/explanation_json.hpp"

#include "rulelens/triples.hpp"

namespace rulelens {
namespace {

using nlohmann::json;

json optional_term(const std::optional<Term>& t) { return t ? json(t->lexical()) : json(nullptr); }

json rule_json(const Rule& r) { return {{"name", r.name}, {"text", format_rule(r)}}; }

json labelled(const Statement& s, const LabelTable& lt) {
    json j = statement_json(s);
    j["label"] = format_statement(s, lt);
    return j;
}

json case_json(const CaseRecord& c) {
    json features = json::array();
    for (const Feature& f : c.features) {
        features.push_back({{"predicate", f.predicate.lexical()}, {"value", f.value.lexical()}, {"asserted", f.asserted}});
    }
    return {{"subject", c.subject.lexical()}, {"outcome", c.outcome.lexical()}, {"features", features}};
}

json difference_json(const CounterfactualDifference& d) {
    return {{"predicate", d.predicate.lexical()},
            {"query_value", optional_term(d.query_value)},
            {"neighbor_value", optional_term(d.neighbor_value)},
            {"substitutable", d.substitutable}};
}

}  // namespace

json statement_json(const Statement& s) {
    return {{"s", s.subject.lexical()}, {"p", s.predicate.lexical()}, {"o", s.object.lexical()}};
}

json trace_json(const TraceNode& t, const LabelTable& lt) {
    json j{{"conclusion", labelled(t.conclusion, lt)}, {"asserted", t.asserted}};
    j["rule"] = t.rule ? rule_json(*t.rule) : json(nullptr);
    json matches = json::array();
    for (const TraceMatch& m : t.matches) {
        json mj{{"statement", labelled(m.statement, lt)}, {"already_explained", m.already_explained}};
        mj["nested"] = m.nested ? trace_json(*m.nested, lt) : json(nullptr);
        matches.push_back(std::move(mj));
    }
    j["matches"] = std::move(matches);
    return j;
}

json contextual_json(const ContextualExplanation& c) {
    json facts = json::array();
    for (const Statement& f : c.facts) facts.push_back(statement_json(f));
    return {{"conclusion", statement_json(c.conclusion)},
            {"rule", rule_json(c.rule)},
            {"facts", facts},
            {"shallow_text", c.shallow_text},
            {"simple_text", c.simple_text}};
}

json contrastive_json(const ContrastiveExplanation& c, const LabelTable& lt) {
    json similarities = json::array();
    for (const Statement& s : c.similarities) similarities.push_back(labelled(s, lt));
    json differences = json::array();
    for (const ValueDifference& d : c.differences) {
        differences.push_back({{"predicate", d.predicate.lexical()},
                               {"label", label(d.predicate, lt)},
                               {"this_value", optional_term(d.this_value)},
                               {"alternate_value", optional_term(d.alternate_value)}});
    }
    return {{"subject_this", c.subject_this.lexical()},
            {"subject_alt", c.subject_alt.lexical()},
            {"similarities", similarities},
            {"differences", differences}};
}

json counterfactual_json(const CounterfactualExplanation& c, const LabelTable& lt) {
    json differences = json::array();
    for (const auto& d : c.differences) {
        json dj = difference_json(d);
        dj["label"] = label(d.predicate, lt);
        differences.push_back(std::move(dj));
    }
    json flips = json::array();
    for (const auto& d : c.flip_set) flips.push_back(difference_json(d));
    return {{"query_statement", statement_json(c.query_statement)},
            {"desired", c.desired.lexical()},
            {"query", case_json(c.query)},
            {"neighbor", case_json(c.neighbor)},
            {"distance", c.distance},
            {"differences", differences},
            {"flip_set", flips},
            {"validated", c.validated}};
}

std::optional<ExplanationType> parse_explanation_type(std::string_view name) {
    if (name == "trace") return ExplanationType::Trace;
    if (name == "contextual") return ExplanationType::Contextual;
    if (name == "contrastive") return ExplanationType::Contrastive;
    if (name == "counterfactual") return ExplanationType::Counterfactual;
    return std::nullopt;
}

std::string_view explanation_type_name(ExplanationType t) {
    switch (t) {
        case ExplanationType::Trace: return "trace";
        case ExplanationType::Contextual: return "contextual";
        case ExplanationType::Contrastive: return "contrastive";
        case ExplanationType::Counterfactual: return "counterfactual";
    }
    return "trace";
}

ExplainResult run_explanation(const InferenceModel& m, const LabelTable& lt, const ExplainRequest& r) {
    if (!m.contains(r.statement)) throw NotFoundError("statement not found: " + statement_lexical(r.statement));
    switch (r.type) {
        case ExplanationType::Trace: {
            TraceNode t = trace(m, r.statement);
            return {render_trace(t, lt), trace_json(t, lt)};
        }
        case ExplanationType::Contextual: {
            ContextualExplanation c = contextual(m, r.statement, lt);
            return {render_contextual(c), contextual_json(c)};
        }
        case ExplanationType::Contrastive: {
            if (!r.against && !r.alt_model) {
                throw MissingOption("contrastive explanations need a subject to compare against or an alternate model");
            }
            const InferenceModel& alt = r.alt_model ? *r.alt_model : m;
            ContrastiveExplanation c =
                contrastive(m, r.statement.subject, alt, r.against.value_or(r.statement.subject));
            return {render_contrastive(c, lt), contrastive_json(c, lt)};
        }
        case ExplanationType::Counterfactual: {
            if (!r.desired) throw MissingOption("counterfactual explanations need a desired value");
            CounterfactualExplanation c = counterfactual(m, r.statement, *r.desired);
            return {render_counterfactual(c, lt), counterfactual_json(c, lt)};
        }
    }
    throw PreconditionError("unknown explanation type");
}

}  // namespace rulelens
