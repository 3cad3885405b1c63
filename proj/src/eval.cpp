#include "proofselect/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

namespace proofselect {

namespace {

bool contains_case_insensitive(const std::string& haystack, const std::string& needle) {
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                        [](char a, char b) {
                          return std::tolower(static_cast<unsigned char>(a)) ==
                                 std::tolower(static_cast<unsigned char>(b));
                        });
  return it != haystack.end();
}

template <typename V>
void require_same_keys(const std::map<std::string, Verdict>& a,
                       const std::map<std::string, V>& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::KeyMismatch, "prediction and label key sets differ in size");
  for (const auto& [key, _] : a)
    if (!b.count(key))
      throw Error(ErrorCode::KeyMismatch, "key missing from labels: " + key);
}

}  // namespace

MetricsReport score_predictions(const std::map<std::string, Verdict>& predictions,
                                const std::map<std::string, Verdict>& labels) {
  require_same_keys(predictions, labels);

  MetricsReport report;
  auto& s = report.support;
  for (const auto& [id, predicted] : predictions) {
    Verdict actual = labels.at(id);
    if (predicted == Verdict::Correct)
      (actual == Verdict::Correct ? s.tp : s.fp)++;
    else
      (actual == Verdict::Correct ? s.fn : s.tn)++;
  }

  if (s.tp + s.fp > 0) {
    report.precision = static_cast<double>(s.tp) / (s.tp + s.fp);
  } else {
    report.flags.push_back("precision_zero_division");
  }
  if (s.tp + s.fn > 0) {
    report.recall = static_cast<double>(s.tp) / (s.tp + s.fn);
  } else {
    report.flags.push_back("recall_zero_division");
  }
  if (report.precision + report.recall > 0) {
    report.f1 = 2 * report.precision * report.recall / (report.precision + report.recall);
  } else {
    report.flags.push_back("f1_zero_division");
  }
  if (s.total() > 0) report.accuracy = static_cast<double>(s.tp + s.tn) / s.total();
  return report;
}

double final_answer_precision(const std::map<std::string, Verdict>& judged,
                              const std::map<std::string, bool>& answer_correct) {
  require_same_keys(judged, answer_correct);

  std::int64_t positives = 0;
  std::int64_t right = 0;
  for (const auto& [id, verdict] : judged) {
    if (verdict != Verdict::Correct) continue;
    ++positives;
    if (answer_correct.at(id)) ++right;
  }
  if (positives == 0)
    throw Error(ErrorCode::NoPositivePredictions,
                "final-answer precision undefined: nothing judged Correct");
  return static_cast<double>(right) / positives;
}

Verdict binarize_seven_point(int score) {
  if (score < 0 || score > 7)
    throw Error(ErrorCode::InvalidArgument, "score must be in [0, 7]");
  return score >= 6 ? Verdict::Correct : Verdict::Incorrect;
}

Verdict format_heuristic(const Problem& problem, const Proof& proof) {
  if (contains_case_insensitive(problem.statement, "triangle")) return Verdict::Incorrect;
  if (proof.text.find("-----") != std::string::npos) return Verdict::Correct;
  return Verdict::Incorrect;
}

BalanceReport balance_audit(const std::vector<Problem>& problems,
                            const std::vector<Proof>& proofs,
                            const BalanceAuditOptions& options) {
  std::unordered_map<std::string, const Problem*> by_id;
  for (const auto& problem : problems) by_id[problem.id] = &problem;

  BalanceReport report;
  std::int64_t global_correct = 0;
  std::int64_t heuristic_hits = 0;

  for (const auto& proof : proofs) {
    if (!proof.label)
      throw Error(ErrorCode::UnlabeledProofs, "proof " + proof.id + " carries no label");
    auto it = by_id.find(proof.problem_id);
    if (it == by_id.end())
      throw Error(ErrorCode::InvalidArgument,
                  "proof " + proof.id + " references unknown problem " + proof.problem_id);

    Verdict truth = proof.label->as_verdict();
    if (truth == Verdict::Correct) ++global_correct;
    if (format_heuristic(*it->second, proof) == truth) ++heuristic_hits;

    auto tally = [&](std::map<std::string, BalanceCounts>& bucket, const std::string& key) {
      auto& counts = bucket[key];
      (truth == Verdict::Correct ? counts.n_correct : counts.n_incorrect)++;
    };
    tally(report.per_generator, proof.generator);
    const auto& tags = it->second->topic_tags;
    tally(report.per_tag, tags.empty() ? "(untagged)" : tags.front());
  }

  if (proofs.empty()) return report;
  const double global_rate = static_cast<double>(global_correct) / proofs.size();
  report.heuristic_accuracy = static_cast<double>(heuristic_hits) / proofs.size();

  auto flag_skews = [&](const std::map<std::string, BalanceCounts>& bucket,
                        BalanceFlag::Scope scope) {
    for (const auto& [key, counts] : bucket) {
      if (counts.total() < options.min_count) continue;
      double rate = counts.correct_rate();
      if (std::abs(rate - global_rate) > options.skew_margin)
        report.flags.push_back({scope, key, rate, global_rate, counts.total()});
    }
  };
  flag_skews(report.per_generator, BalanceFlag::Scope::Generator);
  flag_skews(report.per_tag, BalanceFlag::Scope::Tag);
  return report;
}

double pass_at_1(const std::vector<bool>& successes) {
  if (successes.empty())
    throw Error(ErrorCode::InvalidArgument, "pass@1 needs at least one outcome");
  std::int64_t hits = std::count(successes.begin(), successes.end(), true);
  return static_cast<double>(hits) / successes.size();
}

}  // namespace proofselect
