#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "proofselect/backend.hpp"
#include "proofselect/prompts.hpp"
#include "proofselect/types.hpp"

namespace proofselect {

enum class JudgeMode { Binary, SevenPoint };

enum class ParseFailurePolicy { ExcludeFromVotes, CountAsIncorrect };

struct JudgeConfig {
  TemplateName template_name = TemplateName::OPC;
  int n_j = 1;
  JudgeMode mode = JudgeMode::Binary;
  bool include_rubric = false;
  bool include_ground_truth = false;
  ParseFailurePolicy parse_failure_policy = ParseFailurePolicy::ExcludeFromVotes;

  void validate() const;

  // Template actually used once include_rubric upgrades are applied
  // (OPC -> OPC_Rubric, SevenPointGrading -> SevenPointRubric).
  TemplateName effective_template() const;
};

// Bindings for a judgement prompt. The rubric binding falls back to the
// expected final answer when the problem has no rubric.
Bindings judge_bindings(const Problem& problem, const Proof& proof, const JudgeConfig& config);

std::string build_judge_prompt(const PromptLibrary& library, const Problem& problem,
                               const Proof& proof, const JudgeConfig& config);

// n_j independent judgements, parsed per the config mode. Per-sample seeds
// are hash(run_seed, proof id, sample index), so concurrent execution cannot
// reorder randomness.
std::vector<JudgementSample> sample_judgements(Backend& backend, const PromptLibrary& library,
                                               const Problem& problem, const Proof& proof,
                                               const JudgeConfig& config, std::uint64_t run_seed,
                                               int max_parallel = 1);

// Majority vote / mean score over samples. Binary ties vote Incorrect;
// seven-point verdicts binarize the mean at >= 6.
AggregateJudgement aggregate(const std::vector<JudgementSample>& samples, JudgeMode mode,
                             ParseFailurePolicy policy = ParseFailurePolicy::ExcludeFromVotes);

// Expected accuracy of the majority verdict over a uniformly random size-k
// subset of the samples; ties inside a subset count as Incorrect. The
// expectation is computed exactly (it equals enumeration over all C(n,k)
// subsets).
double majority_at_k(const std::vector<Verdict>& samples, int k);

// Monte Carlo variant: draws size-k subsets with replacement-free sampling.
// Reproduces the per-seed protocol literally instead of the exact
// expectation.
double majority_at_k_sampled(const std::vector<Verdict>& samples, int k, int draws,
                             std::uint64_t seed);

// GenSelect over the judgement texts themselves: one selection call per
// sample seed, majority vote across the selected judgements. Selection
// parse failures fall back to plain aggregation.
JudgementSample judge_genselect(Backend& backend, const PromptLibrary& library,
                                const Problem& problem, const Proof& proof,
                                const std::vector<JudgementSample>& samples,
                                std::uint64_t run_seed);

struct StepSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::string text;
};

struct StepDecomposition {
  std::vector<StepSpan> steps;  // non-overlapping, ordered, covering spans

  void validate(const std::string& proof_text) const;
};

// Wire format shared between the decomposition re-prompts and the mock
// oracle. The decomposition response returns the proof verbatim inside
// <decomposition> tags with <step_break/> separators; the per-step prompt
// wraps the proof in <proof_text> and the target step in <current_step>.
namespace step_format {
inline constexpr const char* kBreakToken = "<step_break/>";
inline constexpr const char* kDecompositionOpen = "<decomposition>";
inline constexpr const char* kDecompositionClose = "</decomposition>";
inline constexpr const char* kProofOpen = "<proof_text>";
inline constexpr const char* kProofClose = "</proof_text>";
inline constexpr const char* kStepOpen = "<current_step>";
inline constexpr const char* kStepClose = "</current_step>";
}  // namespace step_format

// Parses a decomposition response; segments must reconstruct the proof text
// exactly or the result is rejected.
StepDecomposition parse_decomposition(const std::string& raw, const std::string& proof_text);

// Two-phase step judging: one decomposition call, then one judgement call
// per step. The proof is Correct only if every step is judged correct.
// Both re-prompts are judge-internal stand-ins (the published templates do
// not cover step decomposition).
AggregateJudgement step_based_judge(Backend& backend, const Problem& problem,
                                    const Proof& proof, std::uint64_t run_seed,
                                    int max_parallel = 1);

// Per-proof mean across judges; all judges must cover the same proof set.
std::map<std::string, double> ensemble_mean(
    const std::map<std::string, std::map<std::string, double>>& per_judge_scores);

// One sampled judgement as written to judgements.jsonl.
struct JudgementRecord {
  std::string problem_id;
  std::string proof_id;
  int sample_index = 0;
  JudgementSample sample;
  TemplateName template_name = TemplateName::OPC;
  std::uint64_t seed = 0;
};

}  // namespace proofselect
