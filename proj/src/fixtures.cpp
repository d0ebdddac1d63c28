#include "rulelens/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rulelens/error.hpp"
#include "rulelens/triples.hpp"

#ifndef RULELENS_FIXTURES_DIR_DEFAULT
#define RULELENS_FIXTURES_DIR_DEFAULT "fixtures"
#endif

namespace rulelens {
namespace fs = std::filesystem;

fs::path default_fixtures_dir() {
    if (const char* env = std::getenv("RULELENS_FIXTURES_DIR"); env && *env) return env;
    return RULELENS_FIXTURES_DIR_DEFAULT;
}

std::vector<std::string> list_fixtures(const fs::path& dir) {
    std::vector<std::string> ids;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_directory() && fs::exists(entry.path() / "manifest.json")) {
            ids.push_back(entry.path().filename().string());
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Fixture load_fixture(std::string_view id, const fs::path& dir) {
    const bool plain = !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
    const fs::path root = dir / std::string(id);
    if (!plain || !fs::exists(root / "manifest.json")) {
        throw NotFoundError("unknown fixture '" + std::string(id) + "'");
    }

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(root / "manifest.json"));
    } catch (const nlohmann::json::exception& e) {
        throw Error("fixture '" + std::string(id) + "': bad manifest.json: " + e.what());
    }

    Fixture f;
    FixtureManifest& m = f.manifest;
    m.id = j.value("id", std::string(id));
    m.title = j.value("title", m.id);
    m.description = j.value("description", "");
    m.facts_path = root / j.value("facts", "model.facts");
    m.rules_path = root / j.value("rules", "model.rules");

    f.graph = parse_triples(read_file(m.facts_path));
    f.rules = parse_rule_file(read_file(m.rules_path));
    f.labels.prefixes = f.graph.prefixes();
    if (j.contains("labels")) f.labels.merge_json(j.at("labels").dump());

    for (const auto& e : j.value("expected_inferred", nlohmann::json::array())) {
        StatementText t{e.at("s").get<std::string>(), e.at("p").get<std::string>(), e.at("o").get<std::string>()};
        m.expected_inferred.push_back(from_text(t, f.graph.prefixes()));
    }
    return f;
}

StatementText to_text(const Statement& st) {
    return {st.subject.lexical(), st.predicate.lexical(), st.object.lexical()};
}

Statement from_text(const StatementText& t, const PrefixTable& prefixes) {
    return make_statement(parse_term(t.s, prefixes), parse_term(t.p, prefixes), parse_term(t.o, prefixes));
}

}  // namespace rulelens
