#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "proofselect/backend.hpp"

namespace proofselect {

struct HttpBackendConfig {
  std::string base_url;  // e.g. http://localhost:8000/v1
  std::string api_key;
  std::string model = "gpt-oss-120b";
  int timeout_seconds = 120;
  int max_concurrency = 16;
  int max_attempts = 5;
  int backoff_base_ms = 500;  // doubles per retry attempt

  // Reads PROOFSELECT_API_BASE / PROOFSELECT_API_KEY for unset fields.
  void apply_env();
};

// OpenAI-compatible chat/completions client. Sends a single user message and
// returns choices[0].message.content. Retries with exponential backoff on
// timeouts and 429 (honoring Retry-After); any other non-2xx status is fatal.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  ~HttpBackend() override;

  std::string model_id() const override;

 protected:
  std::string do_complete(const CompletionRequest& request) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace proofselect
