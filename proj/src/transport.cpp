#include "floorplan/transport.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

#include "floorplan/errors.hpp"

namespace floorplan {

namespace {

std::string read_response_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PlanError(ErrorCode::TransportError, "cannot read response file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

Endpoint split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw PlanError(ErrorCode::TransportError, "endpoint URL lacks a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

// First choice's message text of a chat-completions reply.
std::string message_text(const std::string& body) {
    const auto doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded()) return body;
    const auto choices = doc.find("choices");
    if (choices == doc.end() || !choices->is_array() || choices->empty()) return {};
    const auto& first = (*choices)[0];
    if (const auto m = first.find("message"); m != first.end() && m->contains("content") && (*m)["content"].is_string()) {
        return (*m)["content"].get<std::string>();
    }
    if (const auto t = first.find("text"); t != first.end() && t->is_string()) return t->get<std::string>();
    return {};
}

std::string post_prompt(const std::string& prompt, const TransportConfig& transport) {
    const Endpoint endpoint = split_url(transport.url);
    httplib::Client client(endpoint.origin);
    const auto seconds = static_cast<time_t>(transport.timeout_seconds);
    const auto micros = static_cast<time_t>((transport.timeout_seconds - static_cast<double>(seconds)) * 1e6);
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);

    httplib::Headers headers;
    if (!transport.api_key.empty()) headers.emplace("Authorization", "Bearer " + transport.api_key);
    nlohmann::json request = {{"messages", {{{"role", "user"}, {"content", prompt}}}}};
    if (!transport.model.empty()) request["model"] = transport.model;
    const std::string payload = request.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= std::max(0, transport.retries); ++attempt) {
        const auto reply = client.Post(endpoint.path, headers, payload, "application/json");
        if (!reply) {
            last_error = httplib::to_string(reply.error());
            continue;
        }
        if (reply->status >= 500 || reply->status == 429) {
            last_error = "HTTP " + std::to_string(reply->status);
            continue;
        }
        if (reply->status < 200 || reply->status >= 300) {
            throw PlanError(ErrorCode::TransportError, "endpoint answered HTTP " + std::to_string(reply->status));
        }
        if (reply->body.empty()) throw PlanError(ErrorCode::EmptyResponse, "endpoint returned an empty body");
        return message_text(reply->body);
    }
    throw PlanError(ErrorCode::TransportError, "endpoint unreachable: " + last_error);
}

}  // namespace

std::string fetch_layout(const std::string& prompt, const TransportConfig& transport) {
    std::string text;
    switch (transport.kind) {
        case TransportConfig::Kind::file: text = read_response_file(transport.path); break;
        case TransportConfig::Kind::endpoint: text = post_prompt(prompt, transport); break;
    }
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw PlanError(ErrorCode::EmptyResponse, "response contains no text");
    }
    return text;
}

}  // namespace floorplan
