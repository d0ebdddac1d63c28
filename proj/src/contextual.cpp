#include "rulelens/contextual.hpp"

#include "rulelens/trace.hpp"

namespace rulelens {

ContextualExplanation contextual(const InferenceModel& m, const Statement& query, const LabelTable& lt) {
    const Derivation& d = derivations_of(m, query).front();
    const Statement& s = *m.find(query);  // stored copy: renders with its own number shapes

    ContextualExplanation c{s, m.rules()[d.rule_index], d.premises, {}, {}};

    const std::string conclusion = format_statement(s, lt);
    c.shallow_text = "Conclusion: " + conclusion + "\n";
    c.shallow_text += "Based on rule: " + display_rule_inline(c.rule) + "\n";
    c.shallow_text += "Using the following facts:\n";
    for (const Statement& f : c.facts) c.shallow_text += "- " + format_statement(f, lt) + "\n";

    c.simple_text = conclusion;
    for (std::size_t i = 0; i < c.facts.size(); ++i) {
        c.simple_text += i == 0 ? " because " : " and ";
        c.simple_text += format_statement(c.facts[i], lt);
    }
    c.simple_text += ".";
    return c;
}

std::string render_contextual(const ContextualExplanation& c) {
    return "Shallow Explanation:\n" + c.shallow_text + "\nSimple Explanation:\n" + c.simple_text + "\n";
}

}  // namespace rulelens
