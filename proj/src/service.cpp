#include "rulelens/service.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include <httplib.h>

#include "rulelens/error.hpp"
#include "rulelens/explanation_json.hpp"
#include "rulelens/triples.hpp"

namespace rulelens {

using nlohmann::json;

struct Service::State {
    RuleFile rules;
    InferenceModel model;
};

// Readers copy `current` under a shared lock and work on the snapshot;
// writers hold the unique lock for the whole re-inference. Everyone passes
// through `gate` first so a steady stream of readers cannot starve a
// writer (glibc's rwlock prefers readers).
struct Service::Slot {
    std::string id;
    std::string title;
    LabelTable labels;
    mutable std::mutex gate;
    mutable std::shared_mutex mutex;
    std::shared_ptr<const State> current;
    std::shared_ptr<const State> previous;  // one-step undo
    std::uint64_t revision = 1;

    std::shared_lock<std::shared_mutex> read_lock() const {
        std::lock_guard g(gate);
        return std::shared_lock(mutex);
    }
    std::pair<std::unique_lock<std::mutex>, std::unique_lock<std::shared_mutex>> write_lock() {
        std::unique_lock g(gate);
        return {std::move(g), std::unique_lock(mutex)};
    }
};

namespace {

ApiResponse error_response(int status, std::string error, std::string detail) {
    return {status, json{{"error", std::move(error)}, {"detail", std::move(detail)}}};
}

ApiResponse parse_error_response(const ParseError& e) {
    ApiResponse r = error_response(422, "parse_error", e.detail());
    r.body["line"] = e.line();
    r.body["col"] = e.col();
    return r;
}

ApiResponse unknown_model(const std::string& id) { return error_response(404, "not_found", "unknown model '" + id + "'"); }

json statements_json(const std::vector<Statement>& statements) {
    json items = json::array();
    for (const Statement& s : statements) items.push_back(statement_json(s));
    return items;
}

std::string required_string(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw MissingOption(std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_string()) throw MissingOption(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_string()) throw MissingOption(std::string("field '") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

/// {"s","p","o"} or a single `s p o` string.
Statement statement_from_json(const json& j, const PrefixTable& prefixes) {
    if (j.is_string()) return parse_statement(j.get<std::string>(), prefixes);
    StatementText t{required_string(j, "s"), required_string(j, "p"), required_string(j, "o")};
    return from_text(t, prefixes);
}

/// Maps library exceptions to status codes.
template <class F>
ApiResponse guarded(F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        return parse_error_response(e);
    } catch (const NotFoundError& e) {
        return error_response(404, "not_found", e.what());
    } catch (const MissingOption& e) {
        return error_response(422, "missing_option", e.what());
    } catch (const PreconditionError& e) {
        return error_response(422, "precondition", e.what());
    } catch (const CounterfactualValidationFailed& e) {
        return error_response(409, "validation_failed", e.what());
    } catch (const NoHistoricalCases& e) {
        return error_response(409, "no_historical_cases", e.what());
    } catch (const InferenceCapExceeded& e) {
        ApiResponse r = error_response(409, "inference_cap_exceeded", e.what());
        r.body["cap"] = e.cap();
        return r;
    } catch (const Error& e) {
        return error_response(422, "error", e.what());
    }
}

}  // namespace

Service::Service(ServiceOptions options) : options_(std::move(options)) {
    for (const std::string& id : list_fixtures(options_.fixtures_dir)) {
        try {
            Fixture f = load_fixture(id, options_.fixtures_dir);
            auto slot = std::make_shared<Slot>();
            slot->id = id;
            slot->title = f.manifest.title;
            slot->labels = std::move(f.labels);
            InferenceModel model = infer(std::move(f.graph), f.rules.rules, options_.inference);
            slot->current = std::make_shared<const State>(State{std::move(f.rules), std::move(model)});
            slots_.emplace(id, std::move(slot));
            order_.push_back(id);
        } catch (const Error& e) {
            load_errors_.push_back(id + ": " + e.what());
        }
    }
}

Service::~Service() = default;

std::shared_ptr<Service::Slot> Service::find_slot(const std::string& id) const {
    std::lock_guard lock(slots_mutex_);
    auto it = slots_.find(id);
    return it == slots_.end() ? nullptr : it->second;
}

ApiResponse Service::list_models() const {
    std::vector<std::shared_ptr<Slot>> slots;
    {
        std::lock_guard lock(slots_mutex_);
        for (const std::string& id : order_) slots.push_back(slots_.at(id));
    }
    json models = json::array();
    for (const auto& slot : slots) {
        auto lock = slot->read_lock();
        models.push_back({{"id", slot->id}, {"title", slot->title}, {"revision", slot->revision}});
    }
    return {200, json{{"models", models}}};
}

ApiResponse Service::get_statements(const std::string& id, const std::string& which) const {
    auto slot = find_slot(id);
    if (!slot) return unknown_model(id);
    std::shared_ptr<const State> state;
    std::uint64_t revision;
    {
        auto lock = slot->read_lock();
        state = slot->current;
        revision = slot->revision;
    }
    json body{{"id", id}, {"which", which}, {"revision", revision}};
    if (which == "base") {
        body["items"] = statements_json(list_statements(state->model, Which::Base));
    } else if (which == "inferred") {
        body["items"] = statements_json(list_statements(state->model, Which::Inferred));
    } else if (which == "rules") {
        json items = json::array();
        for (const Rule& r : state->model.rules()) items.push_back(format_rule(r));
        body["items"] = std::move(items);
        body["text"] = serialize_rule_file(state->rules.prefixes, state->rules.rules);
    } else {
        return error_response(422, "bad_request", "which must be base, inferred or rules");
    }
    return {200, std::move(body)};
}

ApiResponse Service::explain(const std::string& id, const json& body) const {
    auto slot = find_slot(id);
    if (!slot) return unknown_model(id);
    std::shared_ptr<const State> state;
    {
        auto lock = slot->read_lock();
        state = slot->current;
    }
    std::shared_ptr<const State> alt_state;  // keeps the alternate model alive
    return guarded([&]() -> ApiResponse {
        const PrefixTable& prefixes = state->model.base().prefixes();
        if (!body.is_object() || !body.contains("statement")) throw MissingOption("missing field 'statement'");
        const std::string type_name = required_string(body, "type");
        const auto type = parse_explanation_type(type_name);
        if (!type) throw MissingOption("unknown explanation type '" + type_name + "'");

        ExplainRequest req;
        req.type = *type;
        req.statement = statement_from_json(body.at("statement"), prefixes);
        const json options = body.value("options", json::object());
        if (auto alt_id = optional_string(options, "alt_model")) {
            auto alt_slot = find_slot(*alt_id);
            if (!alt_slot) throw NotFoundError("unknown model '" + *alt_id + "'");
            auto lock = alt_slot->read_lock();
            alt_state = alt_slot->current;
            req.alt_model = &alt_state->model;
        }
        if (auto against = optional_string(options, "against")) {
            const PrefixTable& alt_prefixes = alt_state ? alt_state->model.base().prefixes() : prefixes;
            req.against = parse_term(*against, alt_prefixes);
        }
        if (auto desired = optional_string(options, "desired")) req.desired = parse_value(*desired, prefixes);

        try {
            ExplainResult result = run_explanation(state->model, slot->labels, req);
            return {200, json{{"type", type_name}, {"text", result.text}, {"structured", result.structured}}};
        } catch (const CounterfactualValidationFailed& e) {
            ApiResponse r = error_response(409, "validation_failed", e.what());
            r.body["structured"] = counterfactual_json(e.explanation(), slot->labels);
            return r;
        }
    });
}

ApiResponse Service::update_rules(const std::string& id, const json& body) {
    auto slot = find_slot(id);
    if (!slot) return unknown_model(id);
    return guarded([&]() -> ApiResponse {
        RuleFile rules = parse_rule_file(required_string(body, "rules_text"));
        auto lock = slot->write_lock();
        InferenceModel model = infer(slot->current->model.base(), rules.rules, options_.inference);
        const std::size_t inferred = model.inferred().size();
        slot->previous = std::move(slot->current);
        slot->current = std::make_shared<const State>(State{std::move(rules), std::move(model)});
        ++slot->revision;
        return {200, json{{"id", id}, {"revision", slot->revision}, {"inferred_count", inferred}}};
    });
}

ApiResponse Service::revert(const std::string& id) {
    auto slot = find_slot(id);
    if (!slot) return unknown_model(id);
    auto lock = slot->write_lock();
    if (!slot->previous) return error_response(409, "nothing_to_revert", "model '" + id + "' has no previous revision");
    slot->current = std::move(slot->previous);
    slot->previous = nullptr;
    ++slot->revision;
    return {200, json{{"id", id}, {"revision", slot->revision}, {"inferred_count", slot->current->model.inferred().size()}}};
}

ApiResponse Service::upload_model(const ModelUpload& upload) {
    return guarded([&]() -> ApiResponse {
        Graph graph = parse_triples(upload.facts);
        RuleFile rules = parse_rule_file(upload.rules);
        InferenceModel model = infer(graph, rules.rules, options_.inference);

        auto slot = std::make_shared<Slot>();
        slot->labels.prefixes = graph.prefixes();
        const std::size_t inferred = model.inferred().size();
        slot->current = std::make_shared<const State>(State{std::move(rules), std::move(model)});

        std::lock_guard lock(slots_mutex_);
        std::string id = upload.id;
        if (id.empty()) {
            do {
                id = "upload-" + std::to_string(next_upload_++);
            } while (slots_.contains(id));
        } else if (!std::all_of(id.begin(), id.end(), [](char c) {
                       return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
                   })) {
            return error_response(422, "bad_request", "model id may contain only letters, digits, '_' and '-'");
        } else if (slots_.contains(id)) {
            return error_response(409, "conflict", "model '" + id + "' already exists");
        }
        slot->id = id;
        slot->title = upload.title.empty() ? id : upload.title;
        slots_.emplace(id, slot);
        order_.push_back(id);
        return {201, json{{"id", id}, {"title", slot->title}, {"revision", slot->revision}, {"inferred_count", inferred}}};
    });
}

namespace {

void reply(httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json; charset=utf-8");
}

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
    try {
        return req.body.empty() ? json::object() : json::parse(req.body);
    } catch (const json::parse_error& e) {
        reply(res, error_response(400, "bad_json", e.what()));
        return std::nullopt;
    }
}

}  // namespace

void Service::mount(httplib::Server& server) {
    server.Get("/api/models", [this](const httplib::Request&, httplib::Response& res) { reply(res, list_models()); });

    server.Get("/api/models/:id/statements", [this](const httplib::Request& req, httplib::Response& res) {
        const std::string which = req.has_param("which") ? req.get_param_value("which") : "inferred";
        reply(res, get_statements(req.path_params.at("id"), which));
    });

    server.Post("/api/models/:id/explain", [this](const httplib::Request& req, httplib::Response& res) {
        if (auto body = parse_body(req, res)) reply(res, explain(req.path_params.at("id"), *body));
    });

    server.Put("/api/models/:id/rules", [this](const httplib::Request& req, httplib::Response& res) {
        if (auto body = parse_body(req, res)) reply(res, update_rules(req.path_params.at("id"), *body));
    });

    server.Post("/api/models/:id/revert",
                [this](const httplib::Request& req, httplib::Response& res) { reply(res, revert(req.path_params.at("id"))); });

    server.Post("/api/models", [this](const httplib::Request& req, httplib::Response& res) {
        if (!req.is_multipart_form_data()) {
            reply(res, error_response(400, "bad_request", "expected multipart/form-data with facts and rules"));
            return;
        }
        if (!req.has_file("facts") || !req.has_file("rules")) {
            reply(res, error_response(422, "missing_option", "upload needs both 'facts' and 'rules' parts"));
            return;
        }
        ModelUpload up{req.get_file_value("facts").content, req.get_file_value("rules").content, {}, {}};
        if (req.has_file("id")) up.id = req.get_file_value("id").content;
        if (req.has_file("title")) up.title = req.get_file_value("title").content;
        reply(res, upload_model(up));
    });
}

int serve(Service& service, const std::string& host, int port, std::ostream& log) {
    httplib::Server server;
    service.mount(server);
    if (!server.bind_to_port(host, port)) {
        log << "cannot bind " << host << ":" << port << "\n";
        return 1;
    }
    log << "listening on http://" << host << ":" << port << "\n" << std::flush;
    return server.listen_after_bind() ? 0 : 1;
}

}  // namespace rulelens
