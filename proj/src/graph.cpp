#include "rulelens/graph.hpp"

#include <algorithm>

#include "rulelens/error.hpp"

namespace rulelens {

Statement make_statement(Term subject, Term predicate, Term object) {
    if (!subject.is_iri()) throw PreconditionError("statement subject must be an IRI: " + subject.lexical());
    if (!predicate.is_iri()) {
        throw PreconditionError("statement predicate must be an IRI: " + predicate.lexical());
    }
    return Statement{std::move(subject), std::move(predicate), std::move(object)};
}

bool PrefixTable::declare(std::string prefix, std::string ns) {
    if (const std::string* existing = find(prefix)) return *existing == ns;
    entries_.emplace_back(std::move(prefix), std::move(ns));
    return true;
}

const std::string* PrefixTable::find(std::string_view prefix) const {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const auto& e) { return e.first == prefix; });
    return it == entries_.end() ? nullptr : &it->second;
}

void PrefixTable::merge(const PrefixTable& other) {
    for (const auto& [prefix, ns] : other.entries()) declare(prefix, ns);
}

bool Graph::insert(Statement s) {
    if (!index_.insert(s).second) return false;
    statements_.push_back(std::move(s));
    return true;
}

}  // namespace rulelens
