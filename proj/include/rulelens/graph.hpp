#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rulelens/term.hpp"

namespace rulelens {

/// A subject/predicate/object triple. Subject and predicate are IRIs.
struct Statement {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Statement&, const Statement&) = default;
    friend auto operator<=>(const Statement&, const Statement&) = default;
};

/// Builds a statement, throwing PreconditionError if subject or predicate
/// is not an IRI.
Statement make_statement(Term subject, Term predicate, Term object);

/// Prefix → namespace IRI declarations in declaration order.
class PrefixTable {
public:
    /// Adds a declaration. Redeclaring a prefix with the same namespace is a
    /// no-op; with a different namespace it returns false and changes nothing.
    bool declare(std::string prefix, std::string ns);

    const std::string* find(std::string_view prefix) const;
    bool contains(std::string_view prefix) const { return find(prefix) != nullptr; }

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
        return entries_;
    }
    bool empty() const noexcept { return entries_.empty(); }

    /// Adds every entry of `other` that does not conflict with this table.
    void merge(const PrefixTable& other);

    friend bool operator==(const PrefixTable&, const PrefixTable&) = default;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace rulelens

template <>
struct std::hash<rulelens::Statement> {
    std::size_t operator()(const rulelens::Statement& s) const noexcept {
        std::size_t h = s.subject.hash();
        h = h * 1000003u ^ s.predicate.hash();
        h = h * 1000003u ^ s.object.hash();
        return h;
    }
};

namespace rulelens {

/// An insertion-ordered set of statements plus its prefix table.
class Graph {
public:
    Graph() = default;
    explicit Graph(PrefixTable prefixes) : prefixes_(std::move(prefixes)) {}

    PrefixTable& prefixes() noexcept { return prefixes_; }
    const PrefixTable& prefixes() const noexcept { return prefixes_; }

    /// Appends `s` unless already present. Returns whether it was added.
    bool insert(Statement s);
    bool contains(const Statement& s) const { return index_.contains(s); }
    /// The stored copy of `s`, which keeps its own number shapes; null if absent.
    const Statement* find(const Statement& s) const {
        auto it = index_.find(s);
        return it == index_.end() ? nullptr : &*it;
    }

    std::span<const Statement> statements() const noexcept { return statements_; }
    std::size_t size() const noexcept { return statements_.size(); }
    bool empty() const noexcept { return statements_.empty(); }

    /// Same prefixes and the same statements in the same order.
    friend bool operator==(const Graph& a, const Graph& b) {
        return a.prefixes_ == b.prefixes_ && a.statements_ == b.statements_;
    }

private:
    PrefixTable prefixes_;
    std::vector<Statement> statements_;
    std::unordered_set<Statement> index_;
};

}  // namespace rulelens
