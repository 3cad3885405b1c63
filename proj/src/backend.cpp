#include "proofselect/backend.hpp"

namespace proofselect {

const char* to_string(CallKind kind) {
  switch (kind) {
    case CallKind::Generation: return "generation";
    case CallKind::Comparison: return "comparison";
    case CallKind::Judgement: return "judgement";
  }
  return "unknown";
}

SamplingProfile SamplingProfile::preset(const std::string& name) {
  if (name == "gpt-oss") return gpt_oss();
  if (name == "qwen") return qwen();
  if (name == "default") return general();
  throw Error(ErrorCode::InvalidArgument, "unknown sampling preset: " + name);
}

std::pair<std::vector<Proof>, std::vector<Proof>> filter_overlong(
    const std::vector<Proof>& proofs, std::int64_t limit_tokens,
    const TokenCounter& counter) {
  if (limit_tokens <= 0) throw Error(ErrorCode::InvalidArgument, "token limit must be > 0");
  std::vector<Proof> kept;
  std::vector<Proof> dropped;
  for (const auto& proof : proofs) {
    if (counter.count(proof.text) > limit_tokens)
      dropped.push_back(proof);
    else
      kept.push_back(proof);
  }
  return {std::move(kept), std::move(dropped)};
}

}  // namespace proofselect
