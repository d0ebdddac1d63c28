#include "rulelens/term.hpp"

#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <system_error>

namespace rulelens {

Term Term::iri(std::string prefix, std::string local) {
    return Term(Iri{std::move(prefix), std::move(local)});
}

Term Term::number(double value, NumberShape shape) {
    if (value == 0.0) value = 0.0;  // fold -0.0
    return Term(Number{value, shape});
}

Term Term::string(std::string text) { return Term(String{std::move(text)}); }

Term::Kind Term::kind() const noexcept { return static_cast<Kind>(v_.index()); }

const std::string& Term::prefix() const { return std::get<Iri>(v_).prefix; }
const std::string& Term::local() const { return std::get<Iri>(v_).local; }
double Term::value() const { return std::get<Number>(v_).value; }
NumberShape Term::shape() const { return std::get<Number>(v_).shape; }
const std::string& Term::text() const { return std::get<String>(v_).text; }

std::string Term::lexical() const {
    switch (kind()) {
        case Kind::Iri:
            return prefix() + ":" + local();
        case Kind::Number:
            return format_number(value(), shape());
        case Kind::String:
            return quote_string(text());
    }
    return {};
}

bool operator==(const Term& a, const Term& b) noexcept {
    if (a.v_.index() != b.v_.index()) return false;
    switch (a.kind()) {
        case Term::Kind::Iri:
            return a.prefix() == b.prefix() && a.local() == b.local();
        case Term::Kind::Number:
            return a.value() == b.value();
        case Term::Kind::String:
            return a.text() == b.text();
    }
    return false;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
    if (auto c = a.v_.index() <=> b.v_.index(); c != 0) return c;
    switch (a.kind()) {
        case Term::Kind::Iri:
            if (auto c = a.prefix() <=> b.prefix(); c != 0) return c;
            return a.local() <=> b.local();
        case Term::Kind::Number:
            if (a.value() < b.value()) return std::strong_ordering::less;
            if (b.value() < a.value()) return std::strong_ordering::greater;
            return std::strong_ordering::equal;
        case Term::Kind::String:
            return a.text() <=> b.text();
    }
    return std::strong_ordering::equal;
}

std::size_t Term::hash() const noexcept {
    const std::size_t k = v_.index() * 0x9e3779b97f4a7c15ull;
    switch (kind()) {
        case Kind::Iri:
            return k ^ (std::hash<std::string>{}(prefix()) * 31u + std::hash<std::string>{}(local()));
        case Kind::Number:
            return k ^ std::hash<double>{}(value());
        case Kind::String:
            return k ^ std::hash<std::string>{}(text());
    }
    return k;
}

std::string format_number(double value, NumberShape shape) {
    std::array<char, 512> buf{};
    if (shape == NumberShape::Integer && std::trunc(value) == value) {
        auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::fixed, 0);
        assert(ec == std::errc{});
        return std::string(buf.data(), end);
    }
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    assert(ec == std::errc{});
    std::string out(buf.data(), end);
    if (out.find_first_of(".e") == std::string::npos) out += ".0";
    return out;
}

std::string format_fixed(double value, int digits) {
    std::array<char, 512> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::fixed, digits);
    assert(ec == std::errc{});
    return std::string(buf.data(), end);
}

std::optional<Term> lex_number(std::string_view text) {
    std::size_t i = 0;
    const auto digits = [&] {
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        return i > start;
    };
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    if (!digits()) return std::nullopt;
    bool decimal = false;
    if (i < text.size() && text[i] == '.') {
        ++i;
        if (!digits()) return std::nullopt;
        decimal = true;
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        if (!digits()) return std::nullopt;
        decimal = true;
    }
    if (i != text.size()) return std::nullopt;

    std::string_view body = text;
    if (body.front() == '+') body.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc{} || ptr != body.data() + body.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return Term::number(value, decimal ? NumberShape::Decimal : NumberShape::Integer);
}

std::string quote_string(std::string_view text, char quote) {
    std::string out;
    out.reserve(text.size() + 2);
    out += quote;
    for (char c : text) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c == quote) out += '\\';
                out += c;
        }
    }
    out += quote;
    return out;
}

}  // namespace rulelens
