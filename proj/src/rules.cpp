#include "rulelens/rules.hpp"

#include "rulelens/builtins.hpp"
#include "scanner.hpp"

namespace rulelens {
namespace {

using detail::Position;
using detail::Scanner;

void skip_separators(Scanner& in) {
    in.skip_all();
    while (in.consume(',')) in.skip_all();
}

RuleTerm read_rule_term(Scanner& in) {
    skip_separators(in);
    const Position at = in.position();
    const char c = in.peek();
    if (c == '?') {
        in.advance();
        std::string name;
        while (Scanner::is_name_char(in.peek()) && in.peek() != '-') name += in.advance();
        if (name.empty()) Scanner::fail_at(at, "expected a variable name after '?'");
        return RuleTerm::variable(std::move(name));
    }
    if (c == '\'' || c == '"') {
        char quote = 0;
        std::string text = in.read_quoted(&quote);
        if (quote == '\'') {
            if (auto n = lex_number(text)) return RuleTerm::constant(*n);
        }
        return RuleTerm::constant(Term::string(std::move(text)));
    }
    if (in.at_number()) return RuleTerm::constant(in.read_number());
    if (c == '<') Scanner::fail_at(at, "full IRIs are not supported in rules; declare a prefix");
    auto [prefix, local] = in.read_prefixed_name();
    return RuleTerm::constant(Term::iri(std::move(prefix), std::move(local)));
}

Pattern read_pattern(Scanner& in) {
    in.expect('(', "to open a triple pattern");
    RuleTerm s = read_rule_term(in);
    RuleTerm p = read_rule_term(in);
    RuleTerm o = read_rule_term(in);
    skip_separators(in);
    in.expect(')', "to close a triple pattern");
    return Pattern{std::move(s), std::move(p), std::move(o)};
}

struct ParsedClause {
    Clause clause;
    Position at;
};

BuiltinCall read_builtin(Scanner& in, const Position& at) {
    std::string name = in.read_identifier("builtin name");
    const BuiltinSpec* spec = find_builtin(name);
    if (!spec) Scanner::fail_at(at, "unknown builtin '" + name + "'");
    in.skip_inline();
    in.expect('(', "after builtin name");
    std::vector<RuleTerm> args;
    for (;;) {
        skip_separators(in);
        if (in.consume(')')) break;
        if (in.at_end()) in.fail("unterminated builtin call");
        args.push_back(read_rule_term(in));
    }
    if (args.size() != spec->arity) {
        Scanner::fail_at(at, name + " expects " + std::to_string(spec->arity) + " arguments, got " +
                                 std::to_string(args.size()));
    }
    return BuiltinCall{std::move(name), std::move(args)};
}

void bind_pattern_vars(const Pattern& p, std::set<std::string>& bound) {
    for (const RuleTerm* t : {&p.subject, &p.predicate, &p.object}) {
        if (t->is_variable()) bound.insert(t->variable_name());
    }
}

void check_rule(const Rule& rule, const std::vector<ParsedClause>& body, const std::vector<Position>& head_at) {
    std::set<std::string> bound;
    for (const ParsedClause& pc : body) {
        if (const auto* p = std::get_if<Pattern>(&pc.clause)) {
            bind_pattern_vars(*p, bound);
            continue;
        }
        const auto& call = std::get<BuiltinCall>(pc.clause);
        const BuiltinSpec* spec = find_builtin(call.name);
        const std::size_t inputs = spec->kind == BuiltinKind::Function ? call.args.size() - 1 : call.args.size();
        for (std::size_t i = 0; i < inputs; ++i) {
            const RuleTerm& a = call.args[i];
            if (a.is_variable() && !bound.contains(a.variable_name())) {
                Scanner::fail_at(pc.at, call.name + ": argument ?" + a.variable_name() +
                                            " is not bound by an earlier clause");
            }
        }
        if (spec->kind == BuiltinKind::Function && call.args.back().is_variable()) {
            bound.insert(call.args.back().variable_name());
        }
    }
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
        const Pattern& h = rule.head[i];
        for (const RuleTerm* t : {&h.subject, &h.predicate, &h.object}) {
            if (t->is_variable() && !bound.contains(t->variable_name())) {
                Scanner::fail_at(head_at[i], "head variable ?" + t->variable_name() + " in rule " + rule.name +
                                                 " is not bound by the body");
            }
        }
    }
}

Rule read_rule(Scanner& in) {
    in.expect('[', "to start a rule");
    in.skip_all();
    Rule rule;
    rule.name = in.read_identifier("rule name");
    in.skip_all();
    in.expect(':', "after rule name");

    std::vector<ParsedClause> body;
    for (;;) {
        in.skip_all();
        const Position at = in.position();
        if (in.peek() == '-' && in.peek(1) == '>') {
            in.advance();
            in.advance();
            break;
        }
        if (in.peek() == '(') {
            body.push_back({read_pattern(in), at});
        } else if (Scanner::is_name_start(in.peek())) {
            body.push_back({read_builtin(in, at), at});
        } else {
            in.fail("expected a clause or '->' in rule " + rule.name + ", found " + detail::describe(in.peek()));
        }
    }

    std::vector<Position> head_at;
    for (;;) {
        in.skip_all();
        const Position at = in.position();
        if (in.consume(']')) break;
        if (in.peek() == '(') {
            rule.head.push_back(read_pattern(in));
            head_at.push_back(at);
        } else if (Scanner::is_name_start(in.peek())) {
            Scanner::fail_at(at, "builtin calls are not allowed in the head of rule " + rule.name);
        } else {
            in.fail("expected a head pattern or ']' in rule " + rule.name + ", found " +
                    detail::describe(in.peek()));
        }
    }
    if (rule.head.empty()) in.fail("rule " + rule.name + " has an empty head");

    rule.body.reserve(body.size());
    for (const ParsedClause& pc : body) rule.body.push_back(pc.clause);
    check_rule(rule, body, head_at);
    return rule;
}

std::string format_pattern(const Pattern& p) {
    return "(" + format_rule_term(p.subject) + " " + format_rule_term(p.predicate) + " " +
           format_rule_term(p.object) + ")";
}

std::string format_clause(const Clause& c) {
    if (const auto* p = std::get_if<Pattern>(&c)) return format_pattern(*p);
    const auto& call = std::get<BuiltinCall>(c);
    std::string out = call.name + "(";
    for (std::size_t i = 0; i < call.args.size(); ++i) {
        if (i) out += ' ';
        out += format_rule_term(call.args[i]);
    }
    return out + ")";
}

}  // namespace

RuleTerm RuleTerm::variable(std::string name) { return RuleTerm(Variable{std::move(name)}); }
RuleTerm RuleTerm::constant(Term t) { return RuleTerm(std::move(t)); }

RuleFile parse_rule_file(std::string_view text) {
    RuleFile out;
    Scanner in(text);
    for (;;) {
        in.skip_all();
        if (in.at_end()) break;
        const Position at = in.position();
        if (in.peek() == '@') {
            in.advance();
            if (!in.consume_word("prefix")) Scanner::fail_at(at, "unknown directive; expected @prefix");
            detail::read_prefix_directive(in, out.prefixes);
        } else if (in.peek() == '[') {
            out.rules.push_back(read_rule(in));
        } else {
            in.fail("expected '[' to start a rule, found " + detail::describe(in.peek()));
        }
    }
    return out;
}

std::vector<Rule> parse_rules(std::string_view text) { return parse_rule_file(text).rules; }

std::string format_rule_term(const RuleTerm& t) {
    if (t.is_variable()) return "?" + t.variable_name();
    const Term& c = t.constant_term();
    switch (c.kind()) {
        case Term::Kind::Iri:
            return c.lexical();
        case Term::Kind::Number:
            return "'" + format_number(c.value(), c.shape()) + "'";
        case Term::Kind::String:
            // Single-quoted text that lexes as a number would re-parse as one.
            return quote_string(c.text(), lex_number(c.text()) ? '"' : '\'');
    }
    return {};
}

std::string format_rule(const Rule& r) {
    std::string out = "[" + r.name + ":";
    for (const Clause& c : r.body) out += " " + format_clause(c);
    out += " ->";
    for (const Pattern& h : r.head) out += " " + format_pattern(h);
    return out + "]";
}

std::string serialize_rule_file(const PrefixTable& prefixes, const std::vector<Rule>& rules) {
    std::string out;
    for (const auto& [prefix, ns] : prefixes.entries()) out += "@prefix " + prefix + ": <" + ns + "> .\n";
    if (!prefixes.empty() && !rules.empty()) out += "\n";
    for (const Rule& r : rules) out += format_rule(r) + "\n";
    return out;
}

std::optional<Term> resolve(const RuleTerm& t, const Bindings& b) {
    if (!t.is_variable()) return t.constant_term();
    auto it = b.find(t.variable_name());
    if (it == b.end()) return std::nullopt;
    return it->second;
}

std::optional<Statement> instantiate(const Pattern& p, const Bindings& b) {
    auto s = resolve(p.subject, b);
    auto pr = resolve(p.predicate, b);
    auto o = resolve(p.object, b);
    if (!s || !pr || !o || !s->is_iri() || !pr->is_iri()) return std::nullopt;
    return Statement{std::move(*s), std::move(*pr), std::move(*o)};
}

std::set<std::string> rule_variables(const Rule& r) {
    std::set<std::string> out;
    const auto add = [&](const RuleTerm& t) {
        if (t.is_variable()) out.insert(t.variable_name());
    };
    for (const Clause& c : r.body) {
        if (const auto* p = std::get_if<Pattern>(&c)) {
            add(p->subject);
            add(p->predicate);
            add(p->object);
        } else {
            for (const RuleTerm& a : std::get<BuiltinCall>(c).args) add(a);
        }
    }
    for (const Pattern& h : r.head) {
        add(h.subject);
        add(h.predicate);
        add(h.object);
    }
    return out;
}

}  // namespace rulelens
