#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proofselect/backend.hpp"
#include "proofselect/judge.hpp"
#include "proofselect/tournament.hpp"
#include "proofselect/types.hpp"

namespace proofselect {

struct GenerationConfig {
  int n_p = 1;
  SamplingProfile profile;
  // Appends the boxed-answer instruction for final-answer problems.
  bool final_answer_mode = false;
};

// Sentence appended to the generation prompt in final-answer mode.
inline constexpr const char* kBoxedAnswerInstruction =
    "Put your final answer within \\boxed{}.";

// n_p candidate proofs by temperature sampling; ids are
// "<problem_id>#c<index>" and the generator records the backend model.
std::vector<Proof> generate_candidates(Backend& backend, const PromptLibrary& library,
                                       const Problem& problem, const GenerationConfig& config,
                                       std::uint64_t run_seed, int max_parallel = 1);

// Content of the last \boxed{...} (balanced braces), whitespace-trimmed.
std::optional<std::string> extract_final_answer(const std::string& text);

// Everything a selection run produces: the outcome plus the match and
// judgement logs the CLI serializes.
struct SelectionArtifacts {
  SelectionOutcome outcome;
  std::vector<MatchRecord> matches;
  std::vector<JudgementRecord> judgements;
};

// Majority vote over extracted final answers. Proofs without a boxed answer
// are excluded and recorded; answer-group ties break by seeded random.
SelectionOutcome majority_vote_final_answer(const std::vector<Proof>& proofs,
                                            std::uint64_t run_seed);

// Judge every candidate with n_j samples and take the highest mean score.
SelectionArtifacts select_judge_only(Backend& backend, const PromptLibrary& library,
                                     const Problem& problem, const std::vector<Proof>& proofs,
                                     const JudgeConfig& judge_config, std::uint64_t run_seed,
                                     int max_parallel = 1);

SelectionArtifacts select_knockout(Backend& backend, const PromptLibrary& library,
                                   const Problem& problem, const std::vector<Proof>& proofs,
                                   std::uint64_t run_seed, int max_parallel = 1);

SelectionArtifacts select_pairwise(Backend& backend, const PromptLibrary& library,
                                   const Problem& problem, const std::vector<Proof>& proofs,
                                   std::uint64_t run_seed, int max_parallel = 1);

// Knockout to n_s survivors, then n_j judgements per survivor, then argmax
// mean score (ties favor earlier bracket order). Requires n_j >= 1 whenever
// n_s > 1. proofs.size() must equal config.n_p.
SelectionArtifacts select_hybrid(Backend& backend, const PromptLibrary& library,
                                 const Problem& problem, const std::vector<Proof>& proofs,
                                 const HybridConfig& config, const JudgeConfig& judge_config,
                                 std::uint64_t run_seed, int max_parallel = 1);

// Generate-then-select; the executed backend calls reconcile exactly with
// compute_cost(config).
SelectionArtifacts run_hybrid(Backend& backend, const PromptLibrary& library,
                              const Problem& problem, const HybridConfig& config,
                              const JudgeConfig& judge_config, const GenerationConfig& generation,
                              std::uint64_t run_seed, int max_parallel = 1);

// Closed-form ledger for a hybrid configuration:
// generation n_p, comparison n_p - n_s, judgement n_s * n_j.
ComputeLedger compute_cost(const HybridConfig& config);

}  // namespace proofselect
