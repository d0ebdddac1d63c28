#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "rulelens/graph.hpp"
#include "rulelens/rules.hpp"

namespace rulelens {

/// How one inferred statement was produced.
struct Derivation {
    Statement conclusion;
    std::size_t rule_index;  // into InferenceModel::rules()
    Bindings bindings;
    std::vector<Statement> premises;  // body patterns instantiated, in body order

    friend bool operator==(const Derivation&, const Derivation&) = default;
};

enum class Which { Base, Inferred, All };

struct InferenceOptions {
    std::size_t max_inferred = 10'000;
};

/// Cap from RULELENS_MAX_INFERRED when set to a positive integer, else
/// the default.
InferenceOptions options_from_env();

/// The base graph extended with everything the rules derive from it.
class InferenceModel {
public:
    const Graph& base() const noexcept { return base_; }
    const Graph& inferred() const noexcept { return inferred_; }
    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }
    const InferenceOptions& options() const noexcept { return options_; }

    bool contains(const Statement& s) const { return base_.contains(s) || inferred_.contains(s); }
    const Statement* find(const Statement& s) const {
        const Statement* hit = base_.find(s);
        return hit ? hit : inferred_.find(s);
    }

    /// Derivations of an inferred statement; empty for anything else.
    const std::vector<Derivation>& derivations(const Statement& s) const;

    std::size_t derivation_count() const noexcept;

private:
    friend InferenceModel infer(Graph base, std::vector<Rule> rules, InferenceOptions options);

    Graph base_;
    Graph inferred_;
    std::vector<Rule> rules_;
    std::unordered_map<Statement, std::vector<Derivation>> derivations_;
    std::vector<std::string> diagnostics_;
    InferenceOptions options_;
};

/// Forward chains `rules` over `base` to a fixpoint.
///
/// Deterministic: rules fire in file order each round; each body pattern
/// scans candidate statements in insertion order (base, then inferred in
/// derivation order), and conclusions become visible to the matcher as
/// soon as they are produced. A statement's first derivation is its
/// canonical one; later distinct (rule, bindings) pairs that reach it are
/// appended. Throws InferenceCapExceeded once more than
/// `options.max_inferred` statements have been inferred.
InferenceModel infer(Graph base, std::vector<Rule> rules, InferenceOptions options = {});

/// True iff `s` is in the base graph. Throws NotFoundError if `s` is in
/// neither graph.
bool is_asserted(const InferenceModel& m, const Statement& s);

/// Non-empty derivation list whose first entry is canonical. Throws
/// NotFoundError for unknown statements and PreconditionError for
/// asserted ones.
const std::vector<Derivation>& derivations_of(const InferenceModel& m, const Statement& s);

std::vector<Statement> list_statements(const InferenceModel& m, Which which);

}  // namespace rulelens
