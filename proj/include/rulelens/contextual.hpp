#pragma once

#include <string>
#include <vector>

#include "rulelens/inference.hpp"
#include "rulelens/labels.hpp"

namespace rulelens {

/// The rule and directly matched facts behind one inferred statement, with
/// no recursion into how those facts were obtained.
struct ContextualExplanation {
    Statement conclusion;
    Rule rule;
    std::vector<Statement> facts;  // canonical derivation's premises
    std::string shallow_text;
    std::string simple_text;
};

/// Throws NotFoundError for unknown statements and PreconditionError for
/// asserted ones.
ContextualExplanation contextual(const InferenceModel& m, const Statement& s, const LabelTable& lt = {});

/// "Shallow Explanation:" block, a blank line, then "Simple Explanation:".
std::string render_contextual(const ContextualExplanation& c);

}  // namespace rulelens
