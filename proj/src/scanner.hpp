#pragma once

// Character-level lexing shared by the facts, rules and statement parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "rulelens/error.hpp"
#include "rulelens/graph.hpp"
#include "rulelens/term.hpp"

namespace rulelens::detail {

struct Position {
    std::size_t line = 1;
    std::size_t col = 1;
};

class Scanner {
public:
    explicit Scanner(std::string_view text, Position start = {}) : text_(text), pos_(start) {}

    bool at_end() const noexcept { return i_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const noexcept {
        return i_ + ahead < text_.size() ? text_[i_ + ahead] : '\0';
    }
    Position position() const noexcept { return pos_; }
    char advance();

    /// Skips blanks and `#` comments without crossing a newline.
    void skip_inline();
    /// Skips blanks, newlines and comments.
    void skip_all();
    /// True when only blanks/comments remain on the current line.
    bool at_line_end();

    bool consume(char c);
    bool consume_word(std::string_view word);
    void expect(char c, std::string_view context);

    /// `[A-Za-z_][A-Za-z0-9_-]*`
    std::string read_identifier(std::string_view what);
    /// `prefix:local`; the prefix may be empty.
    std::pair<std::string, std::string> read_prefixed_name();
    /// A bare number literal.
    Term read_number();
    /// A `'...'` or `"..."` literal with backslash escapes; returns the body.
    std::string read_quoted(char* quote_out = nullptr);
    /// `<...>`; returns the IRI between the brackets.
    std::string read_iriref();

    static bool is_name_start(char c) noexcept;
    static bool is_name_char(char c) noexcept;
    bool at_number() const noexcept;

    [[noreturn]] void fail(const std::string& detail) const { fail_at(pos_, detail); }
    [[noreturn]] static void fail_at(Position p, const std::string& detail) {
        throw ParseError(detail, p.line, p.col);
    }

private:
    std::string_view text_;
    std::size_t i_ = 0;
    Position pos_;
};

/// Parses the remainder of `@prefix p: <iri> .` (the keyword already
/// consumed) into `prefixes`. Conflicting redeclarations are errors.
void read_prefix_directive(Scanner& in, PrefixTable& prefixes);

/// Human-readable description of the next character for error messages.
std::string describe(char c);

}  // namespace rulelens::detail
