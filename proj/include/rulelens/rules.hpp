#pragma once

// Forward rules in the bracketed syntax
//
//   [DTIRule: (?a ex:type ex:Person) (?a ex:monthlyDebt ?debt)
//             (?a ex:monthlyIncome ?income) quotient(?debt ?income ?dti)
//             -> (?a ex:dtiRatio ?dti)]
//
// Body clauses are triple patterns or builtin calls; heads are patterns.
// A single-quoted argument that lexes as a number ('0.349999') is a number
// constant, any other quoted argument is a string constant. A rules file
// may start with the same @prefix block as a facts file.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rulelens/graph.hpp"

namespace rulelens {

/// A rule argument: `?name` or a constant term.
class RuleTerm {
public:
    static RuleTerm variable(std::string name);
    static RuleTerm constant(Term t);

    bool is_variable() const noexcept { return std::holds_alternative<Variable>(v_); }
    const std::string& variable_name() const { return std::get<Variable>(v_).name; }
    const Term& constant_term() const { return std::get<Term>(v_); }

    friend bool operator==(const RuleTerm&, const RuleTerm&) = default;

private:
    struct Variable {
        std::string name;
        friend bool operator==(const Variable&, const Variable&) = default;
    };
    explicit RuleTerm(std::variant<Variable, Term> v) : v_(std::move(v)) {}

    std::variant<Variable, Term> v_;
};

struct Pattern {
    RuleTerm subject;
    RuleTerm predicate;
    RuleTerm object;

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct BuiltinCall {
    std::string name;
    std::vector<RuleTerm> args;

    friend bool operator==(const BuiltinCall&, const BuiltinCall&) = default;
};

using Clause = std::variant<Pattern, BuiltinCall>;

struct Rule {
    std::string name;
    std::vector<Clause> body;
    std::vector<Pattern> head;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// Variable name → bound value. Ordered so equal bindings compare equal.
using Bindings = std::map<std::string, Term>;

struct RuleFile {
    PrefixTable prefixes;
    std::vector<Rule> rules;
};

/// Parses a rules file. Throws ParseError (with line/col) on syntax errors,
/// unknown builtins, arity mismatches, builtin inputs not bound by an
/// earlier clause, and head variables not bound by the body.
RuleFile parse_rule_file(std::string_view text);
std::vector<Rule> parse_rules(std::string_view text);

/// Canonical one-line text, e.g.
/// `[R: (?a ex:p ?b) greaterThan(?b '3') -> (?b ex:q ?a)]`.
std::string format_rule(const Rule& r);
std::string format_rule_term(const RuleTerm& t);

/// Prefix block followed by one canonical rule per line.
std::string serialize_rule_file(const PrefixTable& prefixes, const std::vector<Rule>& rules);

/// Substitutes bindings into a pattern; nullopt if a variable is unbound
/// or the result would have a non-IRI subject or predicate.
std::optional<Statement> instantiate(const Pattern& p, const Bindings& b);

/// Value of `t` under `b`: the constant itself, or the bound value.
std::optional<Term> resolve(const RuleTerm& t, const Bindings& b);

/// Variables mentioned anywhere in the rule.
std::set<std::string> rule_variables(const Rule& r);

}  // namespace rulelens
