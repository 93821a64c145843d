#pragma once

#include <string>

namespace floorplan {

struct TransportConfig {
    enum class Kind { file, endpoint };
    Kind kind = Kind::file;
    std::string path;      // file transport: saved response
    std::string url;       // endpoint transport: chat-completions URL
    std::string model;
    std::string api_key;   // sent as a bearer token when set
    double timeout_seconds = 60.0;
    int retries = 2;       // extra attempts after the first
};

// Returns the raw response text. The file transport never touches the
// network. Throws PlanError(TransportError) or PlanError(EmptyResponse).
std::string fetch_layout(const std::string& prompt, const TransportConfig& transport);

}  // namespace floorplan
