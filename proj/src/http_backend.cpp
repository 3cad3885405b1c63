#include "proofselect/http_backend.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace proofselect {

namespace {

using nlohmann::json;

// Splits "http://host:port/v1" into the client origin and the path prefix.
std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
  auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "base URL must include a scheme: " + base_url);
  auto path_start = base_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {base_url, ""};
  std::string prefix = base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {base_url.substr(0, path_start), prefix};
}

}  // namespace

void HttpBackendConfig::apply_env() {
  if (base_url.empty()) {
    if (const char* base = std::getenv("PROOFSELECT_API_BASE")) base_url = base;
  }
  if (api_key.empty()) {
    if (const char* key = std::getenv("PROOFSELECT_API_KEY")) api_key = key;
  }
}

struct HttpBackend::Impl {
  HttpBackendConfig config;
  std::string origin;
  std::string path;
  httplib::Client client;
  std::counting_semaphore<4096> in_flight;

  Impl(HttpBackendConfig cfg, std::pair<std::string, std::string> url_parts)
      : config(std::move(cfg)),
        origin(std::move(url_parts.first)),
        path(std::move(url_parts.second) + "/chat/completions"),
        client(origin),
        in_flight(std::clamp(config.max_concurrency, 1, 4096)) {
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    client.set_write_timeout(config.timeout_seconds, 0);
    if (!config.api_key.empty()) client.set_bearer_token_auth(config.api_key);
  }
};

HttpBackend::HttpBackend(HttpBackendConfig config) {
  config.apply_env();
  if (config.base_url.empty())
    throw Error(ErrorCode::InvalidArgument,
                "no API base configured (flag or PROOFSELECT_API_BASE)");
  auto parts = split_base_url(config.base_url);
  impl_ = std::make_unique<Impl>(std::move(config), std::move(parts));
}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::model_id() const { return impl_->config.model; }

std::string HttpBackend::do_complete(const CompletionRequest& request) {
  request.profile.validate();

  json payload = {
      {"model", impl_->config.model},
      {"messages", json::array({json{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.profile.temperature},
      {"top_p", request.profile.top_p},
      {"max_tokens", request.profile.max_tokens},
      {"seed", request.seed},
  };
  if (request.profile.top_k) payload["top_k"] = *request.profile.top_k;
  const std::string body = payload.dump();

  impl_->in_flight.acquire();
  struct Release {
    std::counting_semaphore<4096>& sem;
    ~Release() { sem.release(); }
  } release{impl_->in_flight};

  int backoff_ms = impl_->config.backoff_base_ms;
  std::string last_error;
  for (int attempt = 1; attempt <= impl_->config.max_attempts; ++attempt) {
    auto res = impl_->client.Post(impl_->path, body, "application/json");

    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      // Connection failures and timeouts share the retry path.
    } else if (res->status == 429) {
      last_error = "rate limited";
      if (res->has_header("Retry-After")) {
        int retry_after = std::atoi(res->get_header_value("Retry-After").c_str());
        if (retry_after > 0) backoff_ms = retry_after * 1000;
      }
    } else if (res->status < 200 || res->status >= 300) {
      throw Error(ErrorCode::EndpointError,
                  "endpoint returned status " + std::to_string(res->status) + ": " + res->body);
    } else {
      json reply = json::parse(res->body, nullptr, false);
      if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty())
        throw Error(ErrorCode::EndpointError, "malformed completion response");
      const auto& message = reply["choices"][0]["message"];
      if (!message.contains("content") || !message["content"].is_string())
        throw Error(ErrorCode::EndpointError, "completion response has no content");
      return message["content"].get<std::string>();
    }

    if (attempt < impl_->config.max_attempts) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
      backoff_ms *= 2;
    }
  }
  ErrorCode code = last_error == "rate limited" ? ErrorCode::RateLimited : ErrorCode::Timeout;
  throw Error(code, "completion failed after " + std::to_string(impl_->config.max_attempts) +
                        " attempts: " + last_error);
}

}  // namespace proofselect
