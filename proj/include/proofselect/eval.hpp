#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "proofselect/types.hpp"

namespace proofselect {

struct SupportCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
};

// Correct is the positive class. Zero-division conventions are fixed:
// precision 0 with no positive predictions, recall 0 with no positive
// labels, F1 0 when P + R vanishes; each case lands in `flags`.
struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  SupportCounts support;
  std::vector<std::string> flags;
};

MetricsReport score_predictions(const std::map<std::string, Verdict>& predictions,
                                const std::map<std::string, Verdict>& labels);

// Among proofs judged Correct, the fraction whose final answer is right.
double final_answer_precision(const std::map<std::string, Verdict>& judged,
                              const std::map<std::string, bool>& answer_correct);

// Seven-point binarization: scores >= 6 are Correct.
Verdict binarize_seven_point(int score);

// Rule-based exploitability probe: Incorrect when the problem mentions
// "triangle" (case-insensitive), Correct when the proof contains "-----",
// Incorrect otherwise.
Verdict format_heuristic(const Problem& problem, const Proof& proof);

struct BalanceCounts {
  std::int64_t n_correct = 0;
  std::int64_t n_incorrect = 0;

  std::int64_t total() const { return n_correct + n_incorrect; }
  double correct_rate() const {
    return total() == 0 ? 0.0 : static_cast<double>(n_correct) / total();
  }
};

struct BalanceFlag {
  enum class Scope { Generator, Tag };

  Scope scope;
  std::string key;
  double correct_rate = 0.0;
  double global_rate = 0.0;
  std::int64_t count = 0;
};

struct BalanceReport {
  std::map<std::string, BalanceCounts> per_generator;
  std::map<std::string, BalanceCounts> per_tag;  // keyed by primary topic tag
  std::vector<BalanceFlag> flags;
  // Accuracy of format_heuristic on this dataset: the floor a style-only
  // classifier reaches without reading the mathematics.
  double heuristic_accuracy = 0.0;
};

struct BalanceAuditOptions {
  double skew_margin = 0.25;  // |group rate - global rate| beyond this flags
  std::int64_t min_count = 10;
};

BalanceReport balance_audit(const std::vector<Problem>& problems,
                            const std::vector<Proof>& proofs,
                            const BalanceAuditOptions& options = {});

// Mean success rate over per-seed outcomes.
double pass_at_1(const std::vector<bool>& successes);

}  // namespace proofselect
