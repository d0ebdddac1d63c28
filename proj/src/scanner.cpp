#include "scanner.hpp"

namespace rulelens::detail {

void read_prefix_directive(Scanner& in, PrefixTable& prefixes) {
    in.skip_inline();
    std::string prefix;
    if (Scanner::is_name_start(in.peek())) prefix = in.read_identifier("prefix name");
    in.expect(':', "after prefix name");
    in.skip_inline();
    const Position at = in.position();
    std::string ns = in.read_iriref();
    in.skip_inline();
    in.expect('.', "to end @prefix declaration");
    if (!prefixes.declare(prefix, ns)) {
        Scanner::fail_at(at, "prefix '" + prefix + ":' redeclared with a different namespace");
    }
}

std::string describe(char c) {
    if (c == '\0') return "end of input";
    if (c == '\n') return "end of line";
    return std::string("'") + c + "'";
}

char Scanner::advance() {
    if (at_end()) return '\0';
    char c = text_[i_++];
    if (c == '\n') {
        ++pos_.line;
        pos_.col = 1;
    } else {
        ++pos_.col;
    }
    return c;
}

void Scanner::skip_inline() {
    while (!at_end()) {
        char c = peek();
        if (c == ' ' || c == '\t' || c == '\r') {
            advance();
        } else if (c == '#') {
            while (!at_end() && peek() != '\n') advance();
        } else {
            break;
        }
    }
}

void Scanner::skip_all() {
    for (;;) {
        skip_inline();
        if (peek() != '\n') return;
        advance();
    }
}

bool Scanner::at_line_end() {
    skip_inline();
    return at_end() || peek() == '\n';
}

bool Scanner::consume(char c) {
    if (at_end() || peek() != c) return false;
    advance();
    return true;
}

bool Scanner::consume_word(std::string_view word) {
    if (text_.substr(i_, word.size()) != word) return false;
    if (is_name_char(peek(word.size()))) return false;
    for (std::size_t k = 0; k < word.size(); ++k) advance();
    return true;
}

void Scanner::expect(char c, std::string_view context) {
    if (!consume(c)) {
        fail(std::string("expected '") + c + "' " + std::string(context) + ", found " +
             describe(peek()));
    }
}

bool Scanner::is_name_start(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool Scanner::is_name_char(char c) noexcept {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-';
}

bool Scanner::at_number() const noexcept {
    char c = peek();
    if (c >= '0' && c <= '9') return true;
    if (c == '+' || c == '-') {
        char d = peek(1);
        return d >= '0' && d <= '9';
    }
    return false;
}

std::string Scanner::read_identifier(std::string_view what) {
    if (!is_name_start(peek())) {
        fail("expected " + std::string(what) + ", found " + describe(peek()));
    }
    std::string out;
    while (is_name_char(peek())) out += advance();
    return out;
}

std::pair<std::string, std::string> Scanner::read_prefixed_name() {
    const Position start = pos_;
    std::string prefix;
    if (is_name_start(peek())) prefix = read_identifier("prefix");
    if (!consume(':')) {
        fail_at(start, "expected a prefixed name like ex:name, found " +
                           (prefix.empty() ? describe(peek()) : "'" + prefix + "'"));
    }
    std::string local;
    for (;;) {
        char c = peek();
        const bool local_char = is_name_char(c) || (c >= '0' && c <= '9');
        if (local_char) {
            local += advance();
        } else if (c == '.' && !local.empty() && is_name_char(peek(1))) {
            local += advance();
        } else {
            break;
        }
    }
    if (local.empty()) fail("empty local name after '" + prefix + ":'");
    return {std::move(prefix), std::move(local)};
}

Term Scanner::read_number() {
    const Position start = pos_;
    const std::size_t begin = i_;
    const auto digits = [&] {
        while (peek() >= '0' && peek() <= '9') advance();
    };
    if (peek() == '+' || peek() == '-') advance();
    digits();
    if (peek() == '.' && peek(1) >= '0' && peek(1) <= '9') {
        advance();
        digits();
    }
    if (peek() == 'e' || peek() == 'E') {
        advance();
        if (peek() == '+' || peek() == '-') advance();
        digits();
    }
    auto lexeme = text_.substr(begin, i_ - begin);
    auto term = lex_number(lexeme);
    if (!term) fail_at(start, "malformed number '" + std::string(lexeme) + "'");
    return *term;
}

std::string Scanner::read_quoted(char* quote_out) {
    const Position start = pos_;
    const char quote = peek();
    if (quote != '\'' && quote != '"') fail("expected a quoted literal, found " + describe(quote));
    advance();
    std::string out;
    for (;;) {
        if (at_end() || peek() == '\n') fail_at(start, "unterminated quoted literal");
        char c = advance();
        if (c == quote) break;
        if (c == '\\') {
            char e = advance();
            switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case '\\': out += '\\'; break;
                case '\'': out += '\''; break;
                case '"': out += '"'; break;
                default: fail("unknown escape sequence \\" + std::string(1, e));
            }
            continue;
        }
        out += c;
    }
    if (quote_out) *quote_out = quote;
    return out;
}

std::string Scanner::read_iriref() {
    const Position start = pos_;
    expect('<', "to open an IRI");
    std::string out;
    while (peek() != '>') {
        if (at_end() || peek() == '\n' || peek() == ' ') fail_at(start, "unterminated IRI");
        out += advance();
    }
    advance();
    return out;
}

}  // namespace rulelens::detail
