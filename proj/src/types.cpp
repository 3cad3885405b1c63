#include "proofselect/types.hpp"

#include <unordered_map>
#include <unordered_set>

namespace proofselect {

const char* to_string(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::MajorityVote: return "majority_vote";
    case SelectionMethod::Knockout: return "knockout";
    case SelectionMethod::Pairwise: return "pairwise";
    case SelectionMethod::JudgeOnly: return "judge_only";
    case SelectionMethod::Hybrid: return "hybrid";
  }
  return "unknown";
}

SelectionMethod selection_method_from_string(const std::string& name) {
  if (name == "majority_vote" || name == "maj") return SelectionMethod::MajorityVote;
  if (name == "knockout") return SelectionMethod::Knockout;
  if (name == "pairwise") return SelectionMethod::Pairwise;
  if (name == "judge_only" || name == "judge") return SelectionMethod::JudgeOnly;
  if (name == "hybrid") return SelectionMethod::Hybrid;
  throw Error(ErrorCode::InvalidArgument, "unknown selection method: " + name);
}

ValidationReport validate_dataset(const std::vector<Problem>& problems,
                                  const std::vector<Proof>& proofs) {
  ValidationReport report;
  auto add = [&](ValidationFinding::Kind kind, std::string id, std::string detail) {
    report.findings.push_back({kind, std::move(id), std::move(detail)});
  };

  std::unordered_set<std::string> problem_ids;
  for (const auto& p : problems) {
    if (!problem_ids.insert(p.id).second)
      add(ValidationFinding::Kind::DuplicateProblemId, p.id, "duplicate problem id");
    if (p.id.empty())
      add(ValidationFinding::Kind::EmptyText, p.id, "problem id is empty");
    if (p.statement.empty())
      add(ValidationFinding::Kind::EmptyText, p.id, "problem statement is empty");
  }

  std::unordered_set<std::string> proof_ids;
  for (const auto& q : proofs) {
    if (!proof_ids.insert(q.id).second)
      add(ValidationFinding::Kind::DuplicateProofId, q.id, "duplicate proof id");
    if (q.id.empty())
      add(ValidationFinding::Kind::EmptyText, q.id, "proof id is empty");
    if (q.text.empty())
      add(ValidationFinding::Kind::EmptyText, q.id, "proof text is empty");
    if (!problem_ids.count(q.problem_id))
      add(ValidationFinding::Kind::DanglingProblemRef, q.id,
          "proof references unknown problem id: " + q.problem_id);
  }
  return report;
}

}  // namespace proofselect
