#pragma once

// Shared helpers and independent oracles for the unit tests and the
// acceptance runner. Nothing here calls the code under test to compute an
// expected value.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "rulelens/counterfactual.hpp"
#include "rulelens/fixtures.hpp"
#include "rulelens/inference.hpp"

namespace rulelens::testing {

struct Loaded {
    Fixture fixture;
    InferenceModel model;
};

Loaded load(const std::string& id);

/// Trailing whitespace removed from every line, runs of blank lines
/// collapsed to one, leading and trailing blank lines dropped.
std::string canonical_whitespace(const std::string& text);

std::vector<std::string> lines(const std::string& text);

std::string read_golden(const std::string& name);

// Statement shorthand in the loan/diet/transitive fixtures' `ex:` prefix.
Term ex(const std::string& local);
Statement st(const std::string& s, const std::string& p, Term o);

// ---- nearest-unlike-neighbor oracle -------------------------------------

/// A case as plain data: predicate name → number or text.
using OracleValue = std::variant<double, std::string>;
struct OracleCase {
    std::string name;
    std::map<std::string, OracleValue> features;
};

/// max − min per numeric predicate over `population`.
std::map<std::string, double> oracle_ranges(const std::vector<OracleCase>& population);

/// Normalized L1 over shared predicates.
double oracle_distance(const OracleCase& a, const OracleCase& b, const std::map<std::string, double>& ranges);

/// Index minimizing distance by exhaustive scan; ties go to the smaller name.
std::size_t oracle_nearest(const OracleCase& q, const std::vector<OracleCase>& candidates,
                           const std::map<std::string, double>& ranges);

/// Same case in the library's representation, predicates in `ex:` space.
CaseRecord to_case_record(const OracleCase& c);

std::vector<OracleCase> random_cases(std::mt19937_64& rng, std::size_t max_cases, std::size_t max_features);

// ---- property suites ----------------------------------------------------
//
// Each returns the list of violations; empty means the property holds.

/// Fixpoint idempotence and monotonicity over `rounds` random
/// sub-selections of each fixture's facts.
std::vector<std::string> check_fixpoint_properties(std::uint64_t seed, int rounds);

/// Every recorded derivation in every fixture re-instantiates: premises
/// are the body patterns under the bindings and hold in the model, every
/// builtin passes, the head yields the conclusion. Canonical derivations
/// form an acyclic premise graph.
std::vector<std::string> check_derivation_soundness();

/// Facts and rules files round-trip through serialize/parse, plus
/// `generated` random rules through format_rule/parse_rules.
std::vector<std::string> check_round_trips(std::uint64_t seed, int generated);

/// nearest_unlike_neighbor and feature_distance agree with the oracle on
/// `rounds` random case sets (≤ 8 cases, ≤ 5 features).
std::vector<std::string> check_nun_oracle(std::uint64_t seed, int rounds);

/// Every counterfactual the fixtures admit (and `rounds` randomized loan
/// variants) is re-verified by independent substitution and re-inference.
/// `validated_count` receives the number of validated results checked.
std::vector<std::string> check_counterfactual_validity(std::uint64_t seed, int rounds, int* validated_count = nullptr);

/// Random rule over prefix `ex:` using every clause form.
Rule random_rule(std::mt19937_64& rng, int index);

}  // namespace rulelens::testing
