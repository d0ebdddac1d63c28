#pragma once

// In-memory model sessions behind the HTTP/JSON API.
//
// Every operation is a plain method returning a status code and a JSON
// body so it can be exercised without a socket; mount() wires the same
// methods to httplib routes.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rulelens/fixtures.hpp"
#include "rulelens/inference.hpp"
#include "rulelens/labels.hpp"
#include "rulelens/rules.hpp"

namespace httplib {
class Server;
}

namespace rulelens {

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

struct ServiceOptions {
    std::filesystem::path fixtures_dir = default_fixtures_dir();
    InferenceOptions inference = options_from_env();
};

/// Uploaded model contents.
struct ModelUpload {
    std::string facts;
    std::string rules;
    std::string id;  // empty: generated
    std::string title;
};

class Service {
public:
    /// Loads every fixture in `options.fixtures_dir`. A fixture that fails
    /// to load is skipped and reported by load_errors().
    explicit Service(ServiceOptions options = {});
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    const std::vector<std::string>& load_errors() const noexcept { return load_errors_; }

    ApiResponse list_models() const;
    /// `which` is "base", "inferred" or "rules".
    ApiResponse get_statements(const std::string& id, const std::string& which) const;
    ApiResponse explain(const std::string& id, const nlohmann::json& body) const;
    ApiResponse update_rules(const std::string& id, const nlohmann::json& body);
    ApiResponse upload_model(const ModelUpload& upload);
    ApiResponse revert(const std::string& id);

    /// Registers the /api routes on `server`. The service must outlive it.
    void mount(httplib::Server& server);

private:
    struct State;
    struct Slot;

    std::shared_ptr<Slot> find_slot(const std::string& id) const;

    ServiceOptions options_;
    std::vector<std::string> load_errors_;
    mutable std::mutex slots_mutex_;
    std::map<std::string, std::shared_ptr<Slot>> slots_;  // guarded by slots_mutex_
    std::vector<std::string> order_;                      // guarded by slots_mutex_
    std::uint64_t next_upload_ = 1;                       // guarded by slots_mutex_
};

/// Blocks serving the API on host:port until the process is stopped.
/// Returns non-zero if the port cannot be bound.
int serve(Service& service, const std::string& host, int port, std::ostream& log);

}  // namespace rulelens
