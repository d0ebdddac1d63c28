#include "rulelens/cli.hpp"

#include <algorithm>
#include <optional>
#include <vector>

#include <CLI11.hpp>

#include "rulelens/error.hpp"
#include "rulelens/explanation_json.hpp"
#include "rulelens/fixtures.hpp"
#include "rulelens/service.hpp"
#include "rulelens/triples.hpp"

namespace rulelens::cli {
namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct ModelSource {
    std::string fixture;
    std::string facts;
    std::string rules;
};

void add_source_options(CLI::App& cmd, ModelSource& src) {
    auto* fixture = cmd.add_option("--fixture", src.fixture, "Pre-loaded model id");
    auto* facts = cmd.add_option("--facts", src.facts, "Facts file");
    auto* rules = cmd.add_option("--rules", src.rules, "Rules file");
    fixture->excludes(facts)->excludes(rules);
    facts->needs(rules);
    rules->needs(facts);
}

struct Loaded {
    Graph graph;
    RuleFile rules;
    LabelTable labels;
};

Loaded load(const ModelSource& src) {
    if (!src.fixture.empty()) {
        Fixture f = load_fixture(src.fixture);
        return {std::move(f.graph), std::move(f.rules), std::move(f.labels)};
    }
    if (src.facts.empty()) throw UsageError("give --fixture or both --facts and --rules");
    Loaded l{parse_triples(read_file(src.facts)), parse_rule_file(read_file(src.rules)), {}};
    l.labels.prefixes = l.graph.prefixes();
    return l;
}

int reason(const ModelSource& src, const std::string& dump, std::ostream& out) {
    Loaded l = load(src);
    if (dump == "rules") {
        out << serialize_rule_file(l.rules.prefixes, l.rules.rules);
        return kOk;
    }
    InferenceModel m = infer(std::move(l.graph), l.rules.rules, options_from_env());
    if (dump == "base") {
        out << serialize_triples(m.base());
    } else {
        const auto& inferred = m.inferred();
        out << serialize_statements(m.base().prefixes(), inferred.statements());
    }
    return kOk;
}

struct ExplainArgs {
    std::string type;
    std::string statement;
    std::optional<std::string> against;
    std::optional<std::string> alt_facts;
    std::optional<std::string> desired;
    std::optional<std::string> labels;
};

int explain(const ModelSource& src, const ExplainArgs& a, std::ostream& out) {
    const auto type = parse_explanation_type(a.type);
    if (!type) throw UsageError("unknown --type '" + a.type + "'");
    Loaded l = load(src);
    if (a.labels) l.labels.merge_json(read_file(*a.labels));
    const InferenceOptions opts = options_from_env();
    InferenceModel m = infer(l.graph, l.rules.rules, opts);

    ExplainRequest req;
    req.type = *type;
    req.statement = parse_statement(a.statement, m.base().prefixes());

    std::optional<InferenceModel> alt;
    if (a.alt_facts) alt = infer(parse_triples(read_file(*a.alt_facts)), l.rules.rules, opts);
    if (alt) req.alt_model = &*alt;
    if (a.against) req.against = parse_term(*a.against, (alt ? *alt : m).base().prefixes());
    if (a.desired) req.desired = parse_value(*a.desired, m.base().prefixes());

    out << run_explanation(m, l.labels, req).text;
    return kOk;
}

int fixtures_list(std::ostream& out) {
    const auto dir = default_fixtures_dir();
    for (const std::string& id : list_fixtures(dir)) {
        out << id << "\t" << load_fixture(id, dir).manifest.title << "\n";
    }
    return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Forward-chaining rule engine with explanations", "rulelens"};
    app.require_subcommand(1);

    ModelSource reason_src;
    std::string dump = "inferred";
    auto* reason_cmd = app.add_subcommand("reason", "Run inference and print statements or rules");
    add_source_options(*reason_cmd, reason_src);
    reason_cmd->add_option("--dump", dump, "What to print")->check(CLI::IsMember({"base", "inferred", "rules"}));

    ModelSource explain_src;
    ExplainArgs ea;
    auto* explain_cmd = app.add_subcommand("explain", "Explain one statement");
    add_source_options(*explain_cmd, explain_src);
    explain_cmd->add_option("--type", ea.type, "trace, contextual, contrastive or counterfactual")->required();
    explain_cmd->add_option("--statement", ea.statement, "\"s p o\" in facts syntax")->required();
    explain_cmd->add_option("--against", ea.against, "Contrastive: subject to compare against");
    explain_cmd->add_option("--alt-facts", ea.alt_facts, "Contrastive: facts of the alternate model");
    explain_cmd->add_option("--desired", ea.desired, "Counterfactual: desired outcome value");
    explain_cmd->add_option("--labels", ea.labels, "Label overrides (JSON)");

    auto* fixtures_cmd = app.add_subcommand("fixtures", "Pre-loaded models");
    fixtures_cmd->require_subcommand(1);
    auto* list_cmd = fixtures_cmd->add_subcommand("list", "List pre-loaded models");

    int port = 0;
    std::string host = "127.0.0.1";
    std::string fixtures_dir;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
    serve_cmd->add_option("--port", port, "TCP port")->required()->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--host", host, "Bind address");
    serve_cmd->add_option("--fixtures-dir", fixtures_dir, "Directory of pre-loaded models");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*reason_cmd) return reason(reason_src, dump, out);
        if (*explain_cmd) return explain(explain_src, ea, out);
        if (*list_cmd) return fixtures_list(out);
        if (*serve_cmd) {
            ServiceOptions opts;
            if (!fixtures_dir.empty()) opts.fixtures_dir = fixtures_dir;
            Service service(opts);
            for (const std::string& e : service.load_errors()) err << "warning: skipped fixture " << e << "\n";
            return serve(service, host, port, err);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const MissingOption& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
    return kUsageError;
}

}  // namespace rulelens::cli
