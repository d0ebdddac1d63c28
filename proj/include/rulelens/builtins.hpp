#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "rulelens/rules.hpp"

namespace rulelens {

enum class BuiltinKind {
    Guard,     // tests its arguments, never binds
    Function,  // computes from the leading arguments and binds the last one
};

struct BuiltinSpec {
    std::string_view name;
    BuiltinKind kind;
    std::size_t arity;
};

/// quotient, sum, difference, product, greaterThan, lessThan, ge, le,
/// equal, notEqual.
std::span<const BuiltinSpec> builtin_registry();
const BuiltinSpec* find_builtin(std::string_view name);

struct BuiltinOutcome {
    bool passed = false;
    Bindings bindings;
    /// Set when the call failed for a reason worth reporting (division by
    /// zero, non-numeric operand, non-finite result).
    std::string diagnostic;
};

/// Evaluates one builtin call under `b`.
///
/// Ordering guards need two numbers; equal/notEqual compare numbers
/// numerically and other terms structurally. Functions bind their last
/// argument, or, when it is already bound, pass only on numeric equality.
/// Throws BuiltinError for an unknown name, wrong arity, or an unbound
/// input argument.
BuiltinOutcome eval_builtin(std::string_view name, std::span<const RuleTerm> args, const Bindings& b);

}  // namespace rulelens
