#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rulelens/graph.hpp"

namespace rulelens {

/// Display names for terms in explanation text.
///
/// An IRI's label is its local name split into words (see split_identifier)
/// with each word title-cased, unless the lower-cased word is a known
/// acronym. `ex:dtiRatio` → "DTI Ratio".
/// Overrides replace the computed label for one IRI and may be keyed by
/// prefixed name (`ex:dtiRatio`) or, when `prefixes` is set, by full IRI.
struct LabelTable {
    std::map<std::string, std::string> acronyms{{"dti", "DTI"}};
    std::map<std::string, std::string> overrides;
    PrefixTable prefixes;

    /// Reads `{"acronyms": {...}, "overrides": {...}}` and merges it in.
    void merge_json(std::string_view json_text);
};

/// Splits an identifier before capitals that follow a lower-case letter or
/// digit, before the last capital of an upper-case run, and at `_`/`-`.
/// "dtiRatio" → {"dti", "Ratio"}, "DTIRatio" → {"DTI", "Ratio"}.
std::vector<std::string> split_identifier(std::string_view name);

std::string label(const Term& t, const LabelTable& lt);

/// `<subject-local-name> has <predicate-label>: <object-label>`
std::string format_statement(const Statement& s, const LabelTable& lt);

}  // namespace rulelens
