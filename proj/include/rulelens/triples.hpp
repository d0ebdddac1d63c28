#pragma once

// The `.facts` triple text format:
//
//   @prefix ex: <http://example.org/loan#> .
//   ex:applicant1 ex:creditScore 680 .        # comment
//   ex:applicant1 ex:loanEligibility "Not Eligible" .
//
// One statement per line. Subjects and predicates are prefixed names;
// objects are prefixed names, bare numbers, or quoted strings.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rulelens/graph.hpp"

namespace rulelens {

struct ParseWarning {
    std::size_t line;
    std::string message;
};

/// Parses facts text. Throws ParseError on malformed lines and undeclared
/// prefixes; duplicate statements are skipped and reported in `warnings`.
Graph parse_triples(std::string_view text, std::vector<ParseWarning>* warnings = nullptr);

/// Prefix block, a blank line, then one statement per line.
std::string serialize_triples(const Graph& g);
std::string serialize_statements(const PrefixTable& prefixes, std::span<const Statement> statements);

/// `ex:a ex:p "x" .`
std::string statement_lexical(const Statement& s);

/// Parses one term in the facts grammar. Quoted text (either quote style)
/// is a string; an unquoted word that is not a prefixed name or number is
/// rejected. Prefixes must be declared in `prefixes`.
Term parse_term(std::string_view text, const PrefixTable& prefixes);

/// Like parse_term, but text that is not a valid term (`Eligible`,
/// `Not Eligible`) is taken as a plain string.
Term parse_value(std::string_view text, const PrefixTable& prefixes);

/// Parses `s p o` with an optional trailing `.`.
Statement parse_statement(std::string_view text, const PrefixTable& prefixes);

}  // namespace rulelens
