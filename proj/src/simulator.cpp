#include "proofselect/simulator.hpp"

#include <algorithm>
#include <numeric>

#include "proofselect/error.hpp"
#include "proofselect/pipeline.hpp"
#include "proofselect/rng.hpp"

namespace proofselect {

namespace {

// One synthetic pairwise comparison; returns true when `a` wins.
bool match_first_wins(bool a_correct, bool b_correct, const NoiseModel& noise, Rng& rng) {
  if (a_correct != b_correct) {
    bool better_wins = rng.bernoulli(noise.comparator_accuracy);
    return better_wins == a_correct;
  }
  if (noise.mixed_pair_only) return rng.bernoulli(0.5);
  return rng.bernoulli(noise.comparator_accuracy);
}

// Knockout over candidate labels down to n_s survivors; mirrors the real
// tournament's shuffle-then-pair-adjacent rounds.
std::vector<char> knockout_stage(std::vector<char> labels, int n_s, const NoiseModel& noise,
                                 Rng& rng) {
  while (static_cast<int>(labels.size()) > n_s) {
    rng.shuffle(labels);
    std::vector<char> survivors;
    survivors.reserve(labels.size() / 2);
    for (std::size_t i = 0; i + 1 < labels.size(); i += 2) {
      bool first_wins = match_first_wins(labels[i], labels[i + 1], noise, rng);
      survivors.push_back(first_wins ? labels[i] : labels[i + 1]);
    }
    labels = std::move(survivors);
  }
  return labels;
}

// Judge each survivor with n_j synthetic votes and pick the argmax mean;
// ties resolve uniformly at random.
bool judge_stage(const std::vector<char>& labels, int n_j, const NoiseModel& noise, Rng& rng) {
  std::vector<int> yes(labels.size(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    double p_yes = labels[i] ? noise.judge_tpr : noise.judge_fpr;
    for (int j = 0; j < n_j; ++j)
      if (rng.bernoulli(p_yes)) ++yes[i];
  }
  int best = *std::max_element(yes.begin(), yes.end());
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (yes[i] == best) tied.push_back(i);
  return labels[tied[rng.below(tied.size())]];
}

// Majority over final answers: correct candidates share the true answer,
// incorrect ones scatter over distinct wrong answers.
bool majority_stage(const std::vector<char>& labels, Rng& rng) {
  std::int64_t correct = std::count(labels.begin(), labels.end(), char{1});
  if (correct >= 2) return true;
  if (correct == 1) return rng.below(labels.size()) == 0;
  return false;
}

}  // namespace

void NoiseModel::validate() const {
  for (double p : {p_correct_candidate, judge_tpr, judge_fpr, comparator_accuracy}) {
    if (p < 0 || p > 1)
      throw Error(ErrorCode::InvalidArgument, "noise probabilities must be in [0, 1]");
  }
}

ComputeLedger simulated_cost(SelectionMethod method, const HybridConfig& config) {
  HybridConfig effective = config;
  switch (method) {
    case SelectionMethod::MajorityVote:
      effective.n_s = effective.n_p;
      effective.n_j = 0;
      break;
    case SelectionMethod::Knockout:
      effective.n_s = 1;
      effective.n_j = 0;
      break;
    case SelectionMethod::JudgeOnly:
      effective.n_s = effective.n_p;
      break;
    case SelectionMethod::Pairwise: {
      const std::int64_t n = config.n_p;
      return ComputeLedger::counts(n, n * (n - 1) / 2, 0);
    }
    case SelectionMethod::Hybrid:
      break;
  }
  return compute_cost(effective);
}

SimulationResult simulate(SelectionMethod method, const HybridConfig& config,
                          const NoiseModel& noise, int trials, std::uint64_t seed,
                          const SimulationOptions& options) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  noise.validate();
  if (config.n_p < 1 || config.n_j < 0 || config.n_s < 1 || config.n_s > config.n_p)
    throw Error(ErrorCode::InvalidConfig, "simulation config fields out of range");
  // The bracket constraint only binds methods that actually run a knockout.
  if (method == SelectionMethod::Knockout) HybridConfig{config.n_p, 1, 0}.validate();
  if (method == SelectionMethod::Hybrid) config.validate();
  if ((method == SelectionMethod::Hybrid && config.n_s > 1 && config.n_j < 1) ||
      (method == SelectionMethod::JudgeOnly && config.n_j < 1))
    throw Error(ErrorCode::InvalidConfig, "judging stage needs n_j >= 1");

  SimulationResult result;
  result.mean_ledger = simulated_cost(method, config);
  result.effective_trials = trials;

  int successes = 0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, {"simulate", to_string(method)},
                        {static_cast<std::uint64_t>(trial)}));

    std::vector<char> labels(static_cast<std::size_t>(config.n_p));
    bool any_correct = false;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      any_correct = false;
      for (auto& label : labels) {
        label = rng.bernoulli(noise.p_correct_candidate) ? 1 : 0;
        any_correct |= label != 0;
      }
      if (any_correct || !options.conditioned) break;
    }
    if (!any_correct) continue;  // no correct candidate can be selected

    bool selected_correct = false;
    switch (method) {
      case SelectionMethod::MajorityVote:
        selected_correct = majority_stage(labels, rng);
        break;
      case SelectionMethod::Knockout:
        selected_correct = knockout_stage(labels, 1, noise, rng).front() != 0;
        break;
      case SelectionMethod::JudgeOnly:
        selected_correct = judge_stage(labels, config.n_j, noise, rng);
        break;
      case SelectionMethod::Hybrid: {
        auto survivors = knockout_stage(labels, config.n_s, noise, rng);
        selected_correct = config.n_j >= 1 ? judge_stage(survivors, config.n_j, noise, rng)
                                           : survivors.front() != 0;
        break;
      }
      case SelectionMethod::Pairwise: {
        // Round-robin over labels; most wins, ties by fewest losses among
        // the tied then uniform random (same rule as the real tournament).
        const int n = config.n_p;
        std::vector<int> wins(labels.size(), 0);
        std::vector<std::vector<bool>> beat(labels.size(),
                                            std::vector<bool>(labels.size(), false));
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            bool first_wins = match_first_wins(labels[i], labels[j], noise, rng);
            (first_wins ? wins[i] : wins[j])++;
            beat[first_wins ? i : j][first_wins ? j : i] = true;
          }
        }
        int best = *std::max_element(wins.begin(), wins.end());
        std::vector<int> tied;
        for (int i = 0; i < n; ++i)
          if (wins[i] == best) tied.push_back(i);
        if (tied.size() > 1) {
          std::vector<int> losses(tied.size(), 0);
          for (std::size_t a = 0; a < tied.size(); ++a)
            for (std::size_t b = 0; b < tied.size(); ++b)
              if (beat[tied[b]][tied[a]]) ++losses[a];
          int fewest = *std::min_element(losses.begin(), losses.end());
          std::vector<int> finalists;
          for (std::size_t a = 0; a < tied.size(); ++a)
            if (losses[a] == fewest) finalists.push_back(tied[a]);
          selected_correct = labels[finalists[rng.below(finalists.size())]] != 0;
        } else {
          selected_correct = labels[tied.front()] != 0;
        }
        break;
      }
    }
    if (selected_correct) ++successes;
  }

  result.accuracy = static_cast<double>(successes) / trials;
  return result;
}

std::vector<SweepRow> sweep(SelectionMethod method, const std::vector<HybridConfig>& configs,
                            const NoiseModel& noise, int trials, std::uint64_t seed,
                            const SimulationOptions& options) {
  if (configs.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one config");
  std::vector<SweepRow> rows;
  rows.reserve(configs.size());
  for (const auto& config : configs) {
    auto sim = simulate(method, config, noise, trials, seed, options);
    rows.push_back({method, config, sim.accuracy, sim.mean_ledger.total_calls});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     return a.total_calls < b.total_calls;
                   });
  return rows;
}

}  // namespace proofselect
