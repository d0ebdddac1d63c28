#include "rulelens/labels.hpp"

#include <cctype>

#include <nlohmann/json.hpp>

#include "rulelens/error.hpp"

namespace rulelens {
namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

void LabelTable::merge_json(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PreconditionError(std::string("label table is not valid JSON: ") + e.what());
    }
    if (j.contains("acronyms")) {
        for (const auto& [k, v] : j.at("acronyms").items()) acronyms[lower(k)] = v.get<std::string>();
    }
    if (j.contains("overrides")) {
        for (const auto& [k, v] : j.at("overrides").items()) overrides[k] = v.get<std::string>();
    }
}

std::vector<std::string> split_identifier(std::string_view name) {
    std::vector<std::string> tokens;
    std::string cur;
    const auto flush = [&] {
        if (!cur.empty()) tokens.push_back(std::move(cur));
        cur.clear();
    };
    for (std::size_t i = 0; i < name.size(); ++i) {
        const char c = name[i];
        if (c == '_' || c == '-' || c == ' ') {
            flush();
            continue;
        }
        if (!cur.empty()) {
            const char prev = cur.back();
            const char next = i + 1 < name.size() ? name[i + 1] : '\0';
            // lower→Upper starts a word; so does the last capital of a run
            // followed by lower case ("DTIRatio" → DTI | Ratio).
            if (is_upper(c) && (is_lower(prev) || is_digit(prev) || (is_upper(prev) && is_lower(next)))) {
                flush();
            }
        }
        cur += c;
    }
    flush();
    return tokens;
}

std::string label(const Term& t, const LabelTable& lt) {
    switch (t.kind()) {
        case Term::Kind::Number:
            return format_number(t.value(), t.shape());
        case Term::Kind::String:
            return t.text();
        case Term::Kind::Iri:
            break;
    }
    if (auto it = lt.overrides.find(t.lexical()); it != lt.overrides.end()) return it->second;
    if (const std::string* ns = lt.prefixes.find(t.prefix())) {
        if (auto it = lt.overrides.find(*ns + t.local()); it != lt.overrides.end()) return it->second;
    }
    std::string out;
    for (const std::string& token : split_identifier(t.local())) {
        if (!out.empty()) out += ' ';
        if (auto it = lt.acronyms.find(lower(token)); it != lt.acronyms.end()) {
            out += it->second;
            continue;
        }
        std::string word = token;
        word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
        out += word;
    }
    return out;
}

std::string format_statement(const Statement& s, const LabelTable& lt) {
    const std::string subject = s.subject.is_iri() ? s.subject.local() : label(s.subject, lt);
    return subject + " has " + label(s.predicate, lt) + ": " + label(s.object, lt);
}

}  // namespace rulelens
