#pragma once

#include <cstdint>
#include <vector>

#include "proofselect/types.hpp"

namespace proofselect {

// Stochastic stand-in for generator/judge/comparator behavior. Replaces
// non-reproducible LLM experiments with a model that brute-force
// enumeration can verify at small sizes.
struct NoiseModel {
  double p_correct_candidate = 0.5;  // chance a generated candidate is Correct
  double judge_tpr = 1.0;            // P(judge says yes | Correct)
  double judge_fpr = 0.0;            // P(judge says yes | Incorrect)
  double comparator_accuracy = 1.0;  // chance the better proof wins a mixed pair
  // Same-label pairs resolve by fair coin when true; when false the
  // comparator instead picks the first of the pair with
  // comparator_accuracy (a positional-bias model).
  bool mixed_pair_only = true;

  void validate() const;
};

struct SimulationResult {
  double accuracy = 0.0;
  ComputeLedger mean_ledger;  // deterministic per config
  int effective_trials = 0;
};

struct SimulationOptions {
  // Accuracy conditioned on at least one Correct candidate existing
  // (candidate labels are resampled until one does). Unconditioned mode
  // counts no-correct-candidate trials as failures.
  bool conditioned = true;
};

SimulationResult simulate(SelectionMethod method, const HybridConfig& config,
                          const NoiseModel& noise, int trials, std::uint64_t seed,
                          const SimulationOptions& options = {});

struct SweepRow {
  SelectionMethod method = SelectionMethod::Hybrid;
  HybridConfig config;
  double accuracy = 0.0;
  std::int64_t total_calls = 0;
};

// One simulate() row per config, sorted by total calls.
std::vector<SweepRow> sweep(SelectionMethod method, const std::vector<HybridConfig>& configs,
                            const NoiseModel& noise, int trials, std::uint64_t seed,
                            const SimulationOptions& options = {});

// Ledger a simulated method charges, independent of noise.
ComputeLedger simulated_cost(SelectionMethod method, const HybridConfig& config);

}  // namespace proofselect
