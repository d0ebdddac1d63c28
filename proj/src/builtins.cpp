#include "rulelens/builtins.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rulelens/error.hpp"

namespace rulelens {
namespace {

constexpr std::array kRegistry{
    BuiltinSpec{"quotient", BuiltinKind::Function, 3},
    BuiltinSpec{"sum", BuiltinKind::Function, 3},
    BuiltinSpec{"difference", BuiltinKind::Function, 3},
    BuiltinSpec{"product", BuiltinKind::Function, 3},
    BuiltinSpec{"greaterThan", BuiltinKind::Guard, 2},
    BuiltinSpec{"lessThan", BuiltinKind::Guard, 2},
    BuiltinSpec{"ge", BuiltinKind::Guard, 2},
    BuiltinSpec{"le", BuiltinKind::Guard, 2},
    BuiltinSpec{"equal", BuiltinKind::Guard, 2},
    BuiltinSpec{"notEqual", BuiltinKind::Guard, 2},
};

BuiltinOutcome fail(std::string diagnostic = {}) {
    return BuiltinOutcome{false, {}, std::move(diagnostic)};
}

BuiltinOutcome pass(Bindings b) { return BuiltinOutcome{true, std::move(b), {}}; }

Term input(std::string_view name, const RuleTerm& t, const Bindings& b) {
    auto v = resolve(t, b);
    if (!v) throw BuiltinError(std::string(name) + ": argument ?" + t.variable_name() + " is unbound");
    return *v;
}

std::string call_text(std::string_view name, const Term& x, const Term& y) {
    return std::string(name) + "(" + x.lexical() + " " + y.lexical() + ")";
}

BuiltinOutcome eval_guard(std::string_view name, const Term& x, const Term& y, const Bindings& b) {
    if (name == "equal" || name == "notEqual") {
        const bool same = x == y;
        return (same == (name == "equal")) ? pass(b) : fail();
    }
    if (!x.is_number() || !y.is_number()) {
        return fail(call_text(name, x, y) + ": non-numeric operand");
    }
    const double l = x.value();
    const double r = y.value();
    bool ok = false;
    if (name == "greaterThan") ok = l > r;
    else if (name == "lessThan") ok = l < r;
    else if (name == "ge") ok = l >= r;
    else if (name == "le") ok = l <= r;
    return ok ? pass(b) : fail();
}

BuiltinOutcome eval_function(std::string_view name, const Term& x, const Term& y, const RuleTerm& out,
                             const Bindings& b) {
    if (!x.is_number() || !y.is_number()) {
        return fail(call_text(name, x, y) + ": non-numeric operand");
    }
    double v = 0.0;
    if (name == "quotient") {
        if (y.value() == 0.0) return fail(call_text(name, x, y) + ": division by zero");
        v = x.value() / y.value();
    } else if (name == "sum") {
        v = x.value() + y.value();
    } else if (name == "difference") {
        v = x.value() - y.value();
    } else if (name == "product") {
        v = x.value() * y.value();
    }
    if (!std::isfinite(v)) return fail(call_text(name, x, y) + ": result is not finite");

    const bool integral = name != "quotient" && x.shape() == NumberShape::Integer &&
                          y.shape() == NumberShape::Integer && std::trunc(v) == v;
    Term result = Term::number(v, integral ? NumberShape::Integer : NumberShape::Decimal);

    if (auto bound = resolve(out, b)) {
        return (bound->is_number() && bound->value() == v) ? pass(b) : fail();
    }
    Bindings next = b;
    next.emplace(out.variable_name(), std::move(result));
    return pass(std::move(next));
}

}  // namespace

std::span<const BuiltinSpec> builtin_registry() { return kRegistry; }

const BuiltinSpec* find_builtin(std::string_view name) {
    auto it = std::find_if(kRegistry.begin(), kRegistry.end(),
                           [&](const BuiltinSpec& s) { return s.name == name; });
    return it == kRegistry.end() ? nullptr : &*it;
}

BuiltinOutcome eval_builtin(std::string_view name, std::span<const RuleTerm> args, const Bindings& b) {
    const BuiltinSpec* spec = find_builtin(name);
    if (!spec) throw BuiltinError("unknown builtin '" + std::string(name) + "'");
    if (args.size() != spec->arity) {
        throw BuiltinError(std::string(name) + " expects " + std::to_string(spec->arity) +
                           " arguments, got " + std::to_string(args.size()));
    }
    const Term x = input(name, args[0], b);
    const Term y = input(name, args[1], b);
    if (spec->kind == BuiltinKind::Guard) return eval_guard(name, x, y, b);
    return eval_function(name, x, y, args[2], b);
}

}  // namespace rulelens
