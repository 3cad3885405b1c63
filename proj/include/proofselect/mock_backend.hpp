#pragma once

#include <cstdint>
#include <string>

#include "proofselect/backend.hpp"

namespace proofselect {

// Ground-truth markers the mock oracle reads out of proof texts. Synthetic
// fixtures and mock-generated proofs embed one of these so later judgement
// and comparison calls can answer consistently.
namespace mock_markers {
inline constexpr const char* kCorrect = "[label:correct]";
inline constexpr const char* kIncorrect = "[label:incorrect]";

inline std::string for_label(Verdict v) {
  return v == Verdict::Correct ? kCorrect : kIncorrect;
}
}  // namespace mock_markers

struct MockOracleConfig {
  double flip_probability = 0.0;    // chance a judgement inverts the true label
  double comparator_accuracy = 1.0; // chance a mixed-pair comparison picks the better proof
  std::uint64_t seed = 0;

  void validate() const {
    if (flip_probability < 0 || flip_probability > 1)
      throw Error(ErrorCode::InvalidArgument, "flip_probability must be in [0, 1]");
    if (comparator_accuracy < 0 || comparator_accuracy > 1)
      throw Error(ErrorCode::InvalidArgument, "comparator_accuracy must be in [0, 1]");
  }
};

// Deterministic test double. A response is a pure function of
// (config.seed, request.seed, prompt bytes), so runs are reproducible under
// any concurrency schedule. The request kind is recognized from the output
// contract the prompt mandates (judgement / score / best_solution tags);
// anything else is treated as proof generation.
class MockBackend : public Backend {
 public:
  explicit MockBackend(MockOracleConfig config = {}) : config_(config) {
    config_.validate();
  }

  std::string model_id() const override { return "mock"; }

  const MockOracleConfig& config() const { return config_; }

 protected:
  std::string do_complete(const CompletionRequest& request) override;

 private:
  MockOracleConfig config_;
};

}  // namespace proofselect
