#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proofselect/error.hpp"

namespace proofselect {

enum class Verdict { Correct, Incorrect };

inline const char* to_string(Verdict v) {
  return v == Verdict::Correct ? "correct" : "incorrect";
}

// Ground-truth annotation on a proof. Selection runs without labels;
// evaluation and the mock oracle require them.
struct Label {
  enum class Kind { Binary, SevenPoint, FinalAnswer };

  Kind kind = Kind::Binary;
  Verdict verdict = Verdict::Incorrect;  // Binary
  int score = 0;                         // SevenPoint, in [0, 7]
  bool answer_correct = false;           // FinalAnswer

  static Label binary(Verdict v) {
    Label l;
    l.kind = Kind::Binary;
    l.verdict = v;
    return l;
  }

  static Label seven_point(int score) {
    if (score < 0 || score > 7)
      throw Error(ErrorCode::InvalidArgument,
                  "seven-point score must be in [0, 7], got " + std::to_string(score));
    Label l;
    l.kind = Kind::SevenPoint;
    l.score = score;
    return l;
  }

  static Label final_answer(bool correct) {
    Label l;
    l.kind = Kind::FinalAnswer;
    l.answer_correct = correct;
    return l;
  }

  // Collapse to a binary verdict: seven-point scores binarize at >= 6.
  Verdict as_verdict() const {
    switch (kind) {
      case Kind::Binary: return verdict;
      case Kind::SevenPoint: return score >= 6 ? Verdict::Correct : Verdict::Incorrect;
      case Kind::FinalAnswer: return answer_correct ? Verdict::Correct : Verdict::Incorrect;
    }
    return Verdict::Incorrect;
  }

  bool operator==(const Label&) const = default;
};

struct Problem {
  std::string id;
  std::string statement;
  std::optional<std::string> rubric;
  std::optional<std::string> ground_truth_proof;
  std::optional<std::string> expected_final_answer;
  std::string source;
  std::vector<std::string> topic_tags;
};

struct Proof {
  std::string id;
  std::string problem_id;
  std::string text;
  std::string generator;
  std::optional<Label> label;
};

// Result of parsing one model response: a verdict, a 0-7 score, or a
// recorded failure. Failures are first-class; aggregation decides their
// treatment rather than dropping them.
struct ParsedJudgement {
  enum class Kind { Verdict, Score, Failure };

  Kind kind = Kind::Failure;
  Verdict verdict = Verdict::Incorrect;
  int score = 0;
  std::string failure_reason;

  static ParsedJudgement from_verdict(Verdict v) {
    ParsedJudgement p;
    p.kind = Kind::Verdict;
    p.verdict = v;
    return p;
  }

  static ParsedJudgement from_score(int score) {
    if (score < 0 || score > 7)
      throw Error(ErrorCode::InvalidArgument, "score out of [0, 7]");
    ParsedJudgement p;
    p.kind = Kind::Score;
    p.score = score;
    return p;
  }

  static ParsedJudgement failure(std::string reason) {
    if (reason.empty())
      throw Error(ErrorCode::InvalidArgument, "parse failure needs a reason");
    ParsedJudgement p;
    p.kind = Kind::Failure;
    p.failure_reason = std::move(reason);
    return p;
  }

  bool ok() const { return kind != Kind::Failure; }
  bool operator==(const ParsedJudgement&) const = default;
};

// One raw judgement response with its parse result. call_cost is always 1;
// it exists so aggregate call counts stay auditable next to the samples.
struct JudgementSample {
  std::string raw_text;
  ParsedJudgement parsed;
  std::optional<std::string> summary;
  int call_cost = 1;
};

struct AggregateJudgement {
  Verdict verdict = Verdict::Incorrect;
  double mean_score = 0.0;  // [0,1] for binary, [0,7] for seven-point
  int yes_votes = 0;
  int no_votes = 0;
  int n_samples = 0;
};

// (n_p, n_s, n_j) pipeline shape. n_p/n_s must be a power of two whenever a
// knockout stage actually runs (byes are an opt-in tournament mode).
struct HybridConfig {
  int n_p = 1;
  int n_s = 1;
  int n_j = 0;

  void validate() const {
    if (n_p < 1 || n_s < 1 || n_j < 0)
      throw Error(ErrorCode::InvalidConfig, "hybrid config fields out of range");
    if (n_s > n_p)
      throw Error(ErrorCode::InvalidConfig, "n_s must not exceed n_p");
    if (n_s < n_p) {
      int ratio = n_p / n_s;
      if (ratio * n_s != n_p || (ratio & (ratio - 1)) != 0)
        throw Error(ErrorCode::InvalidConfig,
                    "n_p/n_s must be a power of two when n_s < n_p");
    }
  }
};

// Exact count of model calls, split by category. total_calls is maintained
// equal to the sum on every mutation.
struct ComputeLedger {
  std::int64_t generation_calls = 0;
  std::int64_t comparison_calls = 0;
  std::int64_t judgement_calls = 0;
  std::int64_t total_calls = 0;

  static ComputeLedger counts(std::int64_t generation, std::int64_t comparison,
                              std::int64_t judgement) {
    if (generation < 0 || comparison < 0 || judgement < 0)
      throw Error(ErrorCode::InvalidArgument, "ledger counts must be non-negative");
    ComputeLedger l;
    l.generation_calls = generation;
    l.comparison_calls = comparison;
    l.judgement_calls = judgement;
    l.total_calls = generation + comparison + judgement;
    return l;
  }

  void add_generation(std::int64_t n = 1) { generation_calls += n; total_calls += n; }
  void add_comparison(std::int64_t n = 1) { comparison_calls += n; total_calls += n; }
  void add_judgement(std::int64_t n = 1)  { judgement_calls += n;  total_calls += n; }

  ComputeLedger& operator+=(const ComputeLedger& other) {
    generation_calls += other.generation_calls;
    comparison_calls += other.comparison_calls;
    judgement_calls += other.judgement_calls;
    total_calls += other.total_calls;
    return *this;
  }

  bool consistent() const {
    return generation_calls >= 0 && comparison_calls >= 0 && judgement_calls >= 0 &&
           total_calls == generation_calls + comparison_calls + judgement_calls;
  }

  bool operator==(const ComputeLedger&) const = default;
};

enum class SelectionMethod { MajorityVote, Knockout, Pairwise, JudgeOnly, Hybrid };

const char* to_string(SelectionMethod m);
SelectionMethod selection_method_from_string(const std::string& name);

struct SelectionOutcome {
  std::string problem_id;
  std::string selected_proof_id;
  SelectionMethod method = SelectionMethod::Knockout;
  ComputeLedger ledger;
  std::optional<std::map<std::string, double>> per_proof_scores;
  // Proofs excluded from a vote (e.g. no extractable final answer).
  std::vector<std::string> excluded_proof_ids;
};

// Dataset validation findings. The dataset is accepted iff the report is
// empty; findings never throw so callers can surface all of them at once.
struct ValidationFinding {
  enum class Kind { DuplicateProblemId, DuplicateProofId, DanglingProblemRef, EmptyText };

  Kind kind;
  std::string subject_id;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;

  bool ok() const { return findings.empty(); }
};

ValidationReport validate_dataset(const std::vector<Problem>& problems,
                                  const std::vector<Proof>& proofs);

}  // namespace proofselect
