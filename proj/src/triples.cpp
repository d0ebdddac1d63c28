#include "rulelens/triples.hpp"

#include "scanner.hpp"

namespace rulelens {
namespace {

using detail::Position;
using detail::Scanner;

enum class Role { Subject, Predicate, Object };

const char* role_name(Role r) {
    switch (r) {
        case Role::Subject: return "subject";
        case Role::Predicate: return "predicate";
        case Role::Object: return "object";
    }
    return "term";
}

Term read_term(Scanner& in, const PrefixTable& prefixes, Role role) {
    in.skip_inline();
    const Position at = in.position();
    const char c = in.peek();
    if (c == '\'' || c == '"') {
        if (role != Role::Object) {
            Scanner::fail_at(at, std::string(role_name(role)) + " must be a prefixed name, not a literal");
        }
        return Term::string(in.read_quoted());
    }
    if (in.at_number()) {
        if (role != Role::Object) {
            Scanner::fail_at(at, std::string(role_name(role)) + " must be a prefixed name, not a number");
        }
        return in.read_number();
    }
    if (c == '<') {
        Scanner::fail_at(at, "full IRIs are not supported in statements; declare a prefix");
    }
    auto [prefix, local] = in.read_prefixed_name();
    if (!prefixes.contains(prefix)) Scanner::fail_at(at, "undeclared prefix '" + prefix + ":'");
    return Term::iri(std::move(prefix), std::move(local));
}

Statement read_statement(Scanner& in, const PrefixTable& prefixes) {
    Term s = read_term(in, prefixes, Role::Subject);
    Term p = read_term(in, prefixes, Role::Predicate);
    Term o = read_term(in, prefixes, Role::Object);
    return Statement{std::move(s), std::move(p), std::move(o)};
}

}  // namespace

Graph parse_triples(std::string_view text, std::vector<ParseWarning>* warnings) {
    Graph g;
    Scanner in(text);
    for (;;) {
        in.skip_all();
        if (in.at_end()) break;
        const Position start = in.position();
        if (in.peek() == '@') {
            in.advance();
            if (!in.consume_word("prefix")) Scanner::fail_at(start, "unknown directive; expected @prefix");
            detail::read_prefix_directive(in, g.prefixes());
        } else {
            Statement s = read_statement(in, g.prefixes());
            in.skip_inline();
            in.expect('.', "to end the statement");
            if (!g.insert(std::move(s)) && warnings) {
                warnings->push_back({start.line, "duplicate statement skipped"});
            }
        }
        if (!in.at_line_end()) in.fail("expected end of line, found " + detail::describe(in.peek()));
    }
    return g;
}

std::string statement_lexical(const Statement& s) {
    return s.subject.lexical() + " " + s.predicate.lexical() + " " + s.object.lexical() + " .";
}

std::string serialize_statements(const PrefixTable& prefixes, std::span<const Statement> statements) {
    std::string out;
    for (const auto& [prefix, ns] : prefixes.entries()) {
        out += "@prefix " + prefix + ": <" + ns + "> .\n";
    }
    if (!statements.empty() && !prefixes.empty()) out += "\n";
    for (const Statement& s : statements) {
        out += statement_lexical(s);
        out += "\n";
    }
    return out;
}

std::string serialize_triples(const Graph& g) { return serialize_statements(g.prefixes(), g.statements()); }

Term parse_term(std::string_view text, const PrefixTable& prefixes) {
    Scanner in(text);
    Term t = read_term(in, prefixes, Role::Object);
    in.skip_all();
    if (!in.at_end()) in.fail("unexpected trailing input " + detail::describe(in.peek()));
    return t;
}

Term parse_value(std::string_view text, const PrefixTable& prefixes) {
    try {
        return parse_term(text, prefixes);
    } catch (const ParseError&) {
        return Term::string(std::string(text));
    }
}

Statement parse_statement(std::string_view text, const PrefixTable& prefixes) {
    Scanner in(text);
    Statement s = read_statement(in, prefixes);
    in.skip_all();
    in.consume('.');
    in.skip_all();
    if (!in.at_end()) in.fail("unexpected trailing input " + detail::describe(in.peek()));
    return s;
}

}  // namespace rulelens
