#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace rulelens {

/// Lexical shape of a number literal. `680` is integer-shaped, `2000.0`
/// decimal-shaped. Shape only affects rendering; comparisons are numeric.
enum class NumberShape { Integer, Decimal };

/// An atom of a fact: a prefixed IRI, a number, or a plain string.
///
/// IRIs compare by prefix and local name. Numbers compare by value only, so
/// `2000.0/5000.0` equals the literal `0.4` regardless of how either was
/// written. Non-finite numbers are never constructed by the parsers or the
/// arithmetic builtins.
class Term {
public:
    enum class Kind { Iri, Number, String };

    /// The empty string literal.
    Term() : v_(String{}) {}

    static Term iri(std::string prefix, std::string local);
    static Term number(double value, NumberShape shape = NumberShape::Decimal);
    static Term string(std::string text);

    Kind kind() const noexcept;
    bool is_iri() const noexcept { return kind() == Kind::Iri; }
    bool is_number() const noexcept { return kind() == Kind::Number; }
    bool is_string() const noexcept { return kind() == Kind::String; }

    // Accessors assert the matching kind.
    const std::string& prefix() const;
    const std::string& local() const;
    double value() const;
    NumberShape shape() const;
    const std::string& text() const;

    /// Facts-file form: `ex:applicant1`, `680`, `2000.0`, `"Not Eligible"`.
    std::string lexical() const;

    friend bool operator==(const Term& a, const Term& b) noexcept;
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

    std::size_t hash() const noexcept;

private:
    struct Iri {
        std::string prefix;
        std::string local;
    };
    struct Number {
        double value;
        NumberShape shape;
    };
    struct String {
        std::string text;
    };

    explicit Term(std::variant<Iri, Number, String> v) : v_(std::move(v)) {}

    std::variant<Iri, Number, String> v_;
};

/// Canonical lexical form of a number: integer-shaped values print without
/// a fraction, decimal-shaped values print the shortest round-tripping
/// decimal with at least one fraction digit.
std::string format_number(double value, NumberShape shape);

/// Fixed-point rendering with exactly `digits` fraction digits.
std::string format_fixed(double value, int digits);

/// Lexes the whole of `text` as a number literal (`-12`, `0.349999`, `1e3`).
/// Returns nullopt when `text` is not exactly one number.
std::optional<Term> lex_number(std::string_view text);

/// Escapes and double-quotes `text` for the facts and rules formats.
std::string quote_string(std::string_view text, char quote = '"');

}  // namespace rulelens

template <>
struct std::hash<rulelens::Term> {
    std::size_t operator()(const rulelens::Term& t) const noexcept { return t.hash(); }
};
