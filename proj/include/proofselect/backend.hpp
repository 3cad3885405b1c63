#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "proofselect/error.hpp"
#include "proofselect/types.hpp"

namespace proofselect {

// Ledger category a completion call is attributed to.
enum class CallKind { Generation, Comparison, Judgement };

const char* to_string(CallKind kind);

struct SamplingProfile {
  double temperature = 1.0;
  double top_p = 1.0;
  std::optional<int> top_k;
  int max_tokens = 100000;

  void validate() const {
    if (temperature < 0) throw Error(ErrorCode::InvalidArgument, "temperature must be >= 0");
    if (top_p <= 0 || top_p > 1) throw Error(ErrorCode::InvalidArgument, "top_p must be in (0, 1]");
    if (top_k && *top_k < 1) throw Error(ErrorCode::InvalidArgument, "top_k must be >= 1");
    if (max_tokens < 1) throw Error(ErrorCode::InvalidArgument, "max_tokens must be >= 1");
  }

  // Provider-recommended presets.
  static SamplingProfile gpt_oss() { return {1.0, 1.0, std::nullopt, 100000}; }
  static SamplingProfile qwen() { return {0.6, 0.95, 20, 100000}; }
  static SamplingProfile general() { return {0.7, 0.95, std::nullopt, 100000}; }
  static SamplingProfile preset(const std::string& name);
};

struct CompletionRequest {
  std::string prompt;
  SamplingProfile profile;
  std::uint64_t seed = 0;
  CallKind tag = CallKind::Generation;
};

// Uniform text-completion contract. complete() attributes exactly one call
// to the ledger category named by the request tag; counters are atomic so
// concurrent callers stay exact.
class Backend {
 public:
  virtual ~Backend() = default;

  std::string complete(const CompletionRequest& request) {
    if (budget_) {
      if (attempts_.fetch_add(1, std::memory_order_relaxed) >= *budget_)
        throw Error(ErrorCode::BudgetExceeded, "call budget exhausted");
    }
    std::string text = do_complete(request);
    switch (request.tag) {
      case CallKind::Generation: generation_.fetch_add(1, std::memory_order_relaxed); break;
      case CallKind::Comparison: comparison_.fetch_add(1, std::memory_order_relaxed); break;
      case CallKind::Judgement: judgement_.fetch_add(1, std::memory_order_relaxed); break;
    }
    return text;
  }

  virtual std::string model_id() const = 0;

  ComputeLedger ledger_snapshot() const {
    return ComputeLedger::counts(generation_.load(), comparison_.load(), judgement_.load());
  }

  void reset_ledger() {
    generation_ = 0;
    comparison_ = 0;
    judgement_ = 0;
    attempts_ = 0;
  }

  void set_call_budget(std::optional<std::int64_t> max_calls) { budget_ = max_calls; }

 protected:
  virtual std::string do_complete(const CompletionRequest& request) = 0;

 private:
  std::atomic<std::int64_t> generation_{0};
  std::atomic<std::int64_t> comparison_{0};
  std::atomic<std::int64_t> judgement_{0};
  std::atomic<std::int64_t> attempts_{0};
  std::optional<std::int64_t> budget_;
};

// Deterministic monotone token estimate: ceil(chars / chars_per_token).
// The exact tokenizer is out of scope; the filter only needs to catch
// degenerate overlong outputs.
struct TokenCounter {
  int chars_per_token = 4;

  std::int64_t count(std::string_view text) const {
    if (chars_per_token < 1) throw Error(ErrorCode::InvalidArgument, "divisor must be >= 1");
    return (static_cast<std::int64_t>(text.size()) + chars_per_token - 1) / chars_per_token;
  }
};

inline std::int64_t approximate_token_count(std::string_view text, int chars_per_token = 4) {
  return TokenCounter{chars_per_token}.count(text);
}

// Splits proofs into (kept, dropped) around a token limit, order preserved.
std::pair<std::vector<Proof>, std::vector<Proof>> filter_overlong(
    const std::vector<Proof>& proofs, std::int64_t limit_tokens,
    const TokenCounter& counter = {});

}  // namespace proofselect
