#pragma once

// Pre-loaded domain models. Each lives in `<dir>/<id>/` as
//
//   model.facts    triple text
//   model.rules    rule text
//   manifest.json  {"id", "title", "description", "facts", "rules",
//                   "expected_inferred": [{"s","p","o"}...], "labels"?}

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rulelens/graph.hpp"
#include "rulelens/labels.hpp"
#include "rulelens/rules.hpp"

namespace rulelens {

struct FixtureManifest {
    std::string id;
    std::string title;
    std::string description;
    std::filesystem::path facts_path;
    std::filesystem::path rules_path;
    std::vector<Statement> expected_inferred;
};

struct Fixture {
    Graph graph;
    RuleFile rules;
    FixtureManifest manifest;
    LabelTable labels;
};

/// RULELENS_FIXTURES_DIR if set, else the directory shipped with the build.
std::filesystem::path default_fixtures_dir();

/// Ids of every subdirectory holding a manifest.json, sorted.
std::vector<std::string> list_fixtures(const std::filesystem::path& dir = default_fixtures_dir());

/// Throws NotFoundError for an unknown id and ParseError for malformed
/// files.
Fixture load_fixture(std::string_view id, const std::filesystem::path& dir = default_fixtures_dir());

/// Reads a whole file; throws NotFoundError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Wire form of a statement: each position in facts-file term syntax.
struct StatementText {
    std::string s;
    std::string p;
    std::string o;
};
StatementText to_text(const Statement& st);
Statement from_text(const StatementText& t, const PrefixTable& prefixes);

}  // namespace rulelens
