#include "rulelens/contrastive.hpp"

#include <algorithm>

#include "rulelens/error.hpp"

namespace rulelens {
namespace {

const Feature* find_feature(const std::vector<Feature>& fs, const Term& predicate) {
    auto it = std::find_if(fs.begin(), fs.end(), [&](const Feature& f) { return f.predicate == predicate; });
    return it == fs.end() ? nullptr : &*it;
}

}  // namespace

bool is_type_predicate(const Term& predicate) { return predicate.is_iri() && predicate.local() == "type"; }

std::vector<Feature> subject_features(const InferenceModel& m, const Term& subject) {
    std::vector<Feature> out;
    bool seen = false;
    const auto scan = [&](const Graph& g, bool asserted) {
        for (const Statement& s : g.statements()) {
            if (s.subject != subject) continue;
            seen = true;
            if (is_type_predicate(s.predicate) || find_feature(out, s.predicate)) continue;
            out.push_back(Feature{s.predicate, s.object, asserted});
        }
    };
    scan(m.base(), true);
    scan(m.inferred(), false);
    if (!seen) throw NotFoundError("unknown subject: " + subject.lexical());
    return out;
}

ContrastiveExplanation contrastive(const InferenceModel& m_this, const Term& subject_this,
                                   const InferenceModel& m_alt, const Term& subject_alt) {
    const std::vector<Feature> mine = subject_features(m_this, subject_this);
    const std::vector<Feature> theirs = subject_features(m_alt, subject_alt);

    ContrastiveExplanation c{subject_this, subject_alt, {}, {}};
    for (const Feature& f : mine) {
        const Feature* other = find_feature(theirs, f.predicate);
        if (other && other->value == f.value) {
            c.similarities.push_back(Statement{subject_this, f.predicate, f.value});
        } else {
            c.differences.push_back(
                {f.predicate, f.value, other ? std::optional<Term>(other->value) : std::nullopt});
        }
    }
    for (const Feature& f : theirs) {
        if (!find_feature(mine, f.predicate)) c.differences.push_back({f.predicate, std::nullopt, f.value});
    }
    return c;
}

std::string difference_value(const Term& t, const LabelTable& lt) {
    if (t.is_number() && t.shape() == NumberShape::Decimal) return format_fixed(t.value(), 2);
    return label(t, lt);
}

std::string render_contrastive(const ContrastiveExplanation& c, const LabelTable& lt) {
    std::string out = "Similarities:\n";
    if (c.similarities.empty()) out += "    (none)\n";
    for (const Statement& s : c.similarities) out += "    - " + format_statement(s, lt) + "\n";

    out += "\nDifferences:\n";
    if (c.differences.empty()) out += "    (none)\n";
    const auto value = [&](const std::optional<Term>& t) {
        return t ? difference_value(*t, lt) : std::string("no value");
    };
    for (const ValueDifference& d : c.differences) {
        out += "    - For " + label(d.predicate, lt) + ": this model has " + value(d.this_value) +
               " while the alternate model has " + value(d.alternate_value) + "\n";
    }
    return out;
}

}  // namespace rulelens
