#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "proofselect/eval.hpp"
#include "proofselect/judge.hpp"
#include "proofselect/tournament.hpp"
#include "proofselect/types.hpp"

namespace proofselect {

// JSONL codecs: one UTF-8 JSON object per line, field order fixed by the
// writers so identical runs produce identical bytes.

std::vector<Problem> read_problems_jsonl(const std::string& path);
std::vector<Proof> read_proofs_jsonl(const std::string& path);

void write_problems_jsonl(const std::string& path, const std::vector<Problem>& problems);
void write_proofs_jsonl(const std::string& path, const std::vector<Proof>& proofs);

void write_judgements_jsonl(const std::string& path,
                            const std::vector<JudgementRecord>& records);
std::vector<JudgementRecord> read_judgements_jsonl(const std::string& path);

void write_matches_jsonl(const std::string& path, const std::vector<MatchRecord>& records);

struct ResultRecord {
  SelectionOutcome outcome;
  HybridConfig config;
  std::uint64_t seed = 0;
};

void write_results_jsonl(const std::string& path, const std::vector<ResultRecord>& records);

// Prediction records for `eval`: {"proof_id","verdict"} lines,
// judgements.jsonl (majority-aggregated per proof), or results.jsonl
// (each selected proof counts as a Correct prediction).
std::map<std::string, Verdict> read_predictions(const std::string& path);

// Serialized single-object reports.
std::string metrics_report_json(const MetricsReport& metrics);
std::string balance_report_json(const BalanceReport& balance);
std::string validation_report_json(const ValidationReport& report);

}  // namespace proofselect
