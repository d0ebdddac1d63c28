#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rulelens/inference.hpp"
#include "rulelens/labels.hpp"

namespace rulelens {

struct TraceNode;

struct TraceMatch {
    Statement statement;
    /// Expansion of an inferred premise; null for asserted premises and for
    /// premises already being explained higher up the current path.
    std::shared_ptr<const TraceNode> nested;
    bool already_explained = false;
};

/// One level of a derivation chain. Asserted nodes carry no rule and no
/// matches.
struct TraceNode {
    Statement conclusion;
    bool asserted = false;
    std::optional<Rule> rule;
    std::vector<TraceMatch> matches;
};

/// Expands the canonical derivation of `s` recursively down to asserted
/// facts. Throws NotFoundError when `s` is not in the model.
TraceNode trace(const InferenceModel& m, const Statement& s);

/// Traces of every inferred statement, in derivation order.
std::vector<TraceNode> trace_all(const InferenceModel& m);

/// Nesting depth: 0 for an asserted leaf, 1 for a node whose premises are
/// all asserted, and so on.
std::size_t trace_depth(const TraceNode& t);

/// Renders the indented Conclusion / Match / Rule layout:
///
///   Conclusion: applicant1 has Loan Eligibility: Not Eligible
///     Match: applicant1 has Type: Person
///     Match: applicant1 has DTI Ratio: 0.4
///
///     Conclusion: applicant1 has DTI Ratio: 0.4
///       ...
///       Rule: [DTIRule:
///         ...
///
///     Rule: [NotEligibleDTIRule:
///       ...
std::string render_trace(const TraceNode& t, const LabelTable& lt);

/// Rule text with prefixes stripped and numbers/strings single-quoted,
/// one clause per line below the name, each at `indent` + 2 spaces.
std::string display_rule_block(const Rule& r, std::size_t indent);

/// `[ Name: (?a type Person) ... -> (?a p 'x') ]`
std::string display_rule_inline(const Rule& r);

}  // namespace rulelens
