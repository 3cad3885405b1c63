#include "proofselect/jsonl.hpp"

#include <fstream>

#include <json.hpp>

namespace proofselect {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open for reading: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
  return out;
}

// Applies fn to each non-empty line, reporting the line number on failure.
template <typename Fn>
void for_each_record(const std::string& path, Fn&& fn) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    ordered_json record = ordered_json::parse(line, nullptr, false);
    if (record.is_discarded())
      throw Error(ErrorCode::ParseError,
                  path + ":" + std::to_string(line_number) + ": invalid JSON");
    try {
      fn(record);
    } catch (const ordered_json::exception& e) {
      throw Error(ErrorCode::ParseError,
                  path + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
}

ordered_json label_to_json(const Label& label) {
  switch (label.kind) {
    case Label::Kind::Binary:
      return {{"kind", "binary"}, {"value", to_string(label.verdict)}};
    case Label::Kind::SevenPoint:
      return {{"kind", "seven_point"}, {"value", label.score}};
    case Label::Kind::FinalAnswer:
      return {{"kind", "final_answer"}, {"correct", label.answer_correct}};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown label kind");
}

Label label_from_json(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "binary") {
    const std::string value = j.at("value").get<std::string>();
    if (value != "correct" && value != "incorrect")
      throw Error(ErrorCode::ParseError, "binary label value must be correct|incorrect");
    return Label::binary(value == "correct" ? Verdict::Correct : Verdict::Incorrect);
  }
  if (kind == "seven_point") return Label::seven_point(j.at("value").get<int>());
  if (kind == "final_answer") return Label::final_answer(j.at("correct").get<bool>());
  throw Error(ErrorCode::ParseError, "unknown label kind: " + kind);
}

ordered_json parsed_to_json(const ParsedJudgement& parsed) {
  switch (parsed.kind) {
    case ParsedJudgement::Kind::Verdict:
      return {{"kind", "verdict"}, {"value", to_string(parsed.verdict)}};
    case ParsedJudgement::Kind::Score:
      return {{"kind", "score"}, {"value", parsed.score}};
    case ParsedJudgement::Kind::Failure:
      return {{"kind", "parse_failure"}, {"value", parsed.failure_reason}};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown parse kind");
}

ParsedJudgement parsed_from_json(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "verdict") {
    const std::string value = j.at("value").get<std::string>();
    return ParsedJudgement::from_verdict(value == "correct" ? Verdict::Correct
                                                            : Verdict::Incorrect);
  }
  if (kind == "score") return ParsedJudgement::from_score(j.at("value").get<int>());
  if (kind == "parse_failure")
    return ParsedJudgement::failure(j.at("value").get<std::string>());
  throw Error(ErrorCode::ParseError, "unknown parsed kind: " + kind);
}

ordered_json ledger_to_json(const ComputeLedger& ledger) {
  return {{"generation_calls", ledger.generation_calls},
          {"comparison_calls", ledger.comparison_calls},
          {"judgement_calls", ledger.judgement_calls},
          {"total_calls", ledger.total_calls}};
}

}  // namespace

std::vector<Problem> read_problems_jsonl(const std::string& path) {
  std::vector<Problem> problems;
  for_each_record(path, [&](const ordered_json& j) {
    Problem p;
    p.id = j.at("id").get<std::string>();
    p.statement = j.at("statement").get<std::string>();
    if (j.contains("rubric") && !j["rubric"].is_null())
      p.rubric = j["rubric"].get<std::string>();
    if (j.contains("ground_truth_proof") && !j["ground_truth_proof"].is_null())
      p.ground_truth_proof = j["ground_truth_proof"].get<std::string>();
    if (j.contains("expected_final_answer") && !j["expected_final_answer"].is_null())
      p.expected_final_answer = j["expected_final_answer"].get<std::string>();
    if (j.contains("source")) p.source = j["source"].get<std::string>();
    if (j.contains("topic_tags"))
      p.topic_tags = j["topic_tags"].get<std::vector<std::string>>();
    problems.push_back(std::move(p));
  });
  return problems;
}

std::vector<Proof> read_proofs_jsonl(const std::string& path) {
  std::vector<Proof> proofs;
  for_each_record(path, [&](const ordered_json& j) {
    Proof q;
    q.id = j.at("id").get<std::string>();
    q.problem_id = j.at("problem_id").get<std::string>();
    q.text = j.at("text").get<std::string>();
    if (j.contains("generator")) q.generator = j["generator"].get<std::string>();
    if (j.contains("label") && !j["label"].is_null()) q.label = label_from_json(j["label"]);
    proofs.push_back(std::move(q));
  });
  return proofs;
}

void write_problems_jsonl(const std::string& path, const std::vector<Problem>& problems) {
  auto out = open_output(path);
  for (const auto& p : problems) {
    ordered_json j{{"id", p.id}, {"statement", p.statement}};
    if (p.rubric) j["rubric"] = *p.rubric;
    if (p.ground_truth_proof) j["ground_truth_proof"] = *p.ground_truth_proof;
    if (p.expected_final_answer) j["expected_final_answer"] = *p.expected_final_answer;
    j["source"] = p.source;
    j["topic_tags"] = p.topic_tags;
    out << j.dump() << '\n';
  }
}

void write_proofs_jsonl(const std::string& path, const std::vector<Proof>& proofs) {
  auto out = open_output(path);
  for (const auto& q : proofs) {
    ordered_json j{
        {"id", q.id}, {"problem_id", q.problem_id}, {"text", q.text}, {"generator", q.generator}};
    if (q.label) j["label"] = label_to_json(*q.label);
    out << j.dump() << '\n';
  }
}

void write_judgements_jsonl(const std::string& path,
                            const std::vector<JudgementRecord>& records) {
  auto out = open_output(path);
  for (const auto& r : records) {
    ordered_json j{{"problem_id", r.problem_id},
                   {"proof_id", r.proof_id},
                   {"sample_index", r.sample_index},
                   {"raw_text", r.sample.raw_text},
                   {"parsed", parsed_to_json(r.sample.parsed)},
                   {"template", to_string(r.template_name)},
                   {"seed", r.seed}};
    out << j.dump() << '\n';
  }
}

std::vector<JudgementRecord> read_judgements_jsonl(const std::string& path) {
  std::vector<JudgementRecord> records;
  for_each_record(path, [&](const ordered_json& j) {
    JudgementRecord r;
    r.problem_id = j.at("problem_id").get<std::string>();
    r.proof_id = j.at("proof_id").get<std::string>();
    r.sample_index = j.at("sample_index").get<int>();
    r.sample.raw_text = j.at("raw_text").get<std::string>();
    r.sample.parsed = parsed_from_json(j.at("parsed"));
    r.template_name = template_name_from_string(j.at("template").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    records.push_back(std::move(r));
  });
  return records;
}

void write_matches_jsonl(const std::string& path, const std::vector<MatchRecord>& records) {
  auto out = open_output(path);
  for (const auto& r : records) {
    ordered_json j{
        {"problem_id", r.problem_id},
        {"round", r.result.round},
        {"pair", {r.result.proof_ids.first, r.result.proof_ids.second}},
        {"winner", r.result.winner},
        {"order", {r.result.presentation_order.first, r.result.presentation_order.second}},
        {"seed", r.seed}};
    if (r.result.parse_fallback) j["parse_fallback"] = true;
    out << j.dump() << '\n';
  }
}

void write_results_jsonl(const std::string& path, const std::vector<ResultRecord>& records) {
  auto out = open_output(path);
  for (const auto& r : records) {
    ordered_json j{{"problem_id", r.outcome.problem_id},
                   {"method", to_string(r.outcome.method)},
                   {"config",
                    {{"n_p", r.config.n_p}, {"n_s", r.config.n_s}, {"n_j", r.config.n_j}}},
                   {"selected_proof_id", r.outcome.selected_proof_id},
                   {"ledger", ledger_to_json(r.outcome.ledger)},
                   {"seed", r.seed}};
    if (r.outcome.per_proof_scores) {
      ordered_json scores = ordered_json::object();
      for (const auto& [id, score] : *r.outcome.per_proof_scores) scores[id] = score;
      j["per_proof_scores"] = std::move(scores);
    }
    if (!r.outcome.excluded_proof_ids.empty())
      j["excluded_proof_ids"] = r.outcome.excluded_proof_ids;
    out << j.dump() << '\n';
  }
}

std::map<std::string, Verdict> read_predictions(const std::string& path) {
  std::map<std::string, Verdict> verdicts;
  std::map<std::string, std::pair<int, int>> votes;  // proof_id -> (yes, no)
  for_each_record(path, [&](const ordered_json& j) {
    if (j.contains("verdict")) {
      const std::string v = j.at("verdict").get<std::string>();
      verdicts[j.at("proof_id").get<std::string>()] =
          v == "correct" ? Verdict::Correct : Verdict::Incorrect;
      return;
    }
    // results.jsonl shape: a selection asserts its chosen proof is Correct.
    if (j.contains("selected_proof_id")) {
      verdicts[j.at("selected_proof_id").get<std::string>()] = Verdict::Correct;
      return;
    }
    // judgements.jsonl shape: majority-vote the parsed samples per proof.
    auto parsed = parsed_from_json(j.at("parsed"));
    auto& tally = votes[j.at("proof_id").get<std::string>()];
    if (parsed.kind == ParsedJudgement::Kind::Verdict)
      (parsed.verdict == Verdict::Correct ? tally.first : tally.second)++;
    else if (parsed.kind == ParsedJudgement::Kind::Score)
      (parsed.score >= 6 ? tally.first : tally.second)++;
  });
  for (const auto& [id, tally] : votes)
    verdicts[id] = tally.first > tally.second ? Verdict::Correct : Verdict::Incorrect;
  return verdicts;
}

std::string metrics_report_json(const MetricsReport& metrics) {
  ordered_json j{{"precision", metrics.precision},
                 {"recall", metrics.recall},
                 {"f1", metrics.f1},
                 {"accuracy", metrics.accuracy},
                 {"support",
                  {{"tp", metrics.support.tp},
                   {"fp", metrics.support.fp},
                   {"tn", metrics.support.tn},
                   {"fn", metrics.support.fn}}},
                 {"flags", metrics.flags}};
  return j.dump(2);
}

std::string balance_report_json(const BalanceReport& balance) {
  auto bucket_json = [](const std::map<std::string, BalanceCounts>& bucket) {
    ordered_json j = ordered_json::object();
    for (const auto& [key, counts] : bucket)
      j[key] = {{"n_correct", counts.n_correct}, {"n_incorrect", counts.n_incorrect}};
    return j;
  };
  ordered_json flags = ordered_json::array();
  for (const auto& flag : balance.flags) {
    flags.push_back({{"scope", flag.scope == BalanceFlag::Scope::Generator ? "generator" : "tag"},
                     {"key", flag.key},
                     {"correct_rate", flag.correct_rate},
                     {"global_rate", flag.global_rate},
                     {"count", flag.count}});
  }
  ordered_json j{{"per_generator", bucket_json(balance.per_generator)},
                 {"per_tag", bucket_json(balance.per_tag)},
                 {"flags", std::move(flags)},
                 {"heuristic_accuracy", balance.heuristic_accuracy}};
  return j.dump(2);
}

std::string validation_report_json(const ValidationReport& report) {
  auto kind_name = [](ValidationFinding::Kind kind) {
    switch (kind) {
      case ValidationFinding::Kind::DuplicateProblemId: return "duplicate_problem_id";
      case ValidationFinding::Kind::DuplicateProofId: return "duplicate_proof_id";
      case ValidationFinding::Kind::DanglingProblemRef: return "dangling_problem_ref";
      case ValidationFinding::Kind::EmptyText: return "empty_text";
    }
    return "unknown";
  };
  ordered_json findings = ordered_json::array();
  for (const auto& finding : report.findings) {
    findings.push_back({{"kind", kind_name(finding.kind)},
                        {"subject_id", finding.subject_id},
                        {"detail", finding.detail}});
  }
  ordered_json j{{"ok", report.ok()}, {"findings", std::move(findings)}};
  return j.dump(2);
}

}  // namespace proofselect
