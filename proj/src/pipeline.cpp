#include "proofselect/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "proofselect/parallel.hpp"
#include "proofselect/rng.hpp"

namespace proofselect {

namespace {

std::string candidate_id(const std::string& problem_id, int index) {
  std::ostringstream out;
  out << problem_id << "#c";
  if (index < 100) out << (index < 10 ? "00" : "0");
  out << index;
  return out.str();
}

std::string trim_copy(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Judgement stage shared by judge-only and hybrid selection: scores every
// proof by mean judgement and returns the argmax in input order.
struct JudgeStage {
  std::map<std::string, double> scores;
  std::vector<JudgementRecord> records;
  int selected = -1;
};

JudgeStage judge_stage(Backend& backend, const PromptLibrary& library, const Problem& problem,
                       const std::vector<Proof>& proofs, const JudgeConfig& judge_config,
                       std::uint64_t run_seed, int max_parallel) {
  JudgeStage stage;
  std::vector<std::vector<JudgementSample>> all_samples(proofs.size());

  // Samples across proofs share the parallel budget; seeds are derived per
  // (proof, sample), so the schedule cannot change any outcome.
  const std::size_t total = proofs.size() * static_cast<std::size_t>(judge_config.n_j);
  for (auto& samples : all_samples)
    samples.resize(static_cast<std::size_t>(judge_config.n_j));
  std::vector<std::string> prompts(proofs.size());
  for (std::size_t p = 0; p < proofs.size(); ++p)
    prompts[p] = build_judge_prompt(library, problem, proofs[p], judge_config);

  parallel_for(total, max_parallel, [&](std::size_t flat) {
    const std::size_t p = flat / static_cast<std::size_t>(judge_config.n_j);
    const std::size_t s = flat % static_cast<std::size_t>(judge_config.n_j);
    CompletionRequest request;
    request.prompt = prompts[p];
    request.seed = derive_seed(run_seed, {proofs[p].id}, {s});
    request.tag = CallKind::Judgement;
    std::string raw = backend.complete(request);
    auto& sample = all_samples[p][s];
    sample.raw_text = raw;
    sample.parsed = judge_config.mode == JudgeMode::Binary ? parse_binary_judgement(raw)
                                                           : parse_seven_point(raw);
    sample.summary = extract_summary(raw);
  });

  double best = -1.0;
  for (std::size_t p = 0; p < proofs.size(); ++p) {
    for (std::size_t s = 0; s < all_samples[p].size(); ++s) {
      stage.records.push_back({problem.id, proofs[p].id, static_cast<int>(s), all_samples[p][s],
                               judge_config.effective_template(),
                               derive_seed(run_seed, {proofs[p].id}, {s})});
    }
    try {
      auto agg = aggregate(all_samples[p], judge_config.mode, judge_config.parse_failure_policy);
      stage.scores[proofs[p].id] = agg.mean_score;
      if (agg.mean_score > best) {  // ties favor earlier bracket order
        best = agg.mean_score;
        stage.selected = static_cast<int>(p);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AllSamplesUnparseable) throw;
      // Unscored survivor: skipped in the argmax, visible by absence.
    }
  }
  if (stage.selected < 0)
    throw Error(ErrorCode::AllSurvivorsUnscored, "no proof received a parseable judgement");
  return stage;
}

}  // namespace

std::vector<Proof> generate_candidates(Backend& backend, const PromptLibrary& library,
                                       const Problem& problem, const GenerationConfig& config,
                                       std::uint64_t run_seed, int max_parallel) {
  if (config.n_p < 1) throw Error(ErrorCode::InvalidConfig, "n_p must be >= 1");
  config.profile.validate();

  std::string prompt =
      render(library.get(TemplateName::ProofGeneration), {{"problem", problem.statement}});
  if (config.final_answer_mode) prompt += std::string("\n") + kBoxedAnswerInstruction + "\n";

  std::vector<Proof> proofs(static_cast<std::size_t>(config.n_p));
  std::vector<std::string> failures(proofs.size());
  parallel_for(proofs.size(), max_parallel, [&](std::size_t i) {
    CompletionRequest request;
    request.prompt = prompt;
    request.profile = config.profile;
    request.seed = derive_seed(run_seed, {problem.id, "generate"}, {i});
    request.tag = CallKind::Generation;
    try {
      Proof& proof = proofs[i];
      proof.id = candidate_id(problem.id, static_cast<int>(i));
      proof.problem_id = problem.id;
      proof.text = backend.complete(request);
      proof.generator = backend.model_id();
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  int failed = 0;
  std::string first_failure;
  for (const auto& f : failures) {
    if (f.empty()) continue;
    if (failed == 0) first_failure = f;
    ++failed;
  }
  if (failed > 0)
    throw Error(ErrorCode::GenerationIncomplete,
                std::to_string(failed) + " of " + std::to_string(config.n_p) +
                    " generation calls failed; first: " + first_failure);
  return proofs;
}

std::optional<std::string> extract_final_answer(const std::string& text) {
  const std::string token = "\\boxed{";
  std::size_t pos = text.rfind(token);
  if (pos == std::string::npos) return std::nullopt;
  std::size_t start = pos + token.size();
  int depth = 1;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    if (text[i] == '}' && --depth == 0)
      return trim_copy(text.substr(start, i - start));
  }
  return std::nullopt;  // unbalanced
}

SelectionOutcome majority_vote_final_answer(const std::vector<Proof>& proofs,
                                            std::uint64_t run_seed) {
  if (proofs.empty()) throw Error(ErrorCode::InvalidArgument, "no proofs to vote over");

  SelectionOutcome outcome;
  outcome.problem_id = proofs.front().problem_id;
  outcome.method = SelectionMethod::MajorityVote;
  outcome.ledger = ComputeLedger::counts(static_cast<std::int64_t>(proofs.size()), 0, 0);

  // Group by exact answer string after whitespace trim.
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    if (auto answer = extract_final_answer(proofs[i].text))
      groups[*answer].push_back(i);
    else
      outcome.excluded_proof_ids.push_back(proofs[i].id);
  }
  if (groups.empty())
    throw Error(ErrorCode::NoExtractableAnswer, "no proof has an extractable boxed answer");

  std::size_t best_size = 0;
  for (const auto& [_, members] : groups) best_size = std::max(best_size, members.size());
  std::vector<const std::vector<std::size_t>*> tied;
  for (const auto& [_, members] : groups)
    if (members.size() == best_size) tied.push_back(&members);

  const std::vector<std::size_t>* winning = tied.front();
  if (tied.size() > 1) {
    Rng rng(derive_seed(run_seed, {outcome.problem_id, "maj_tie"}));
    winning = tied[rng.below(tied.size())];
  }
  outcome.selected_proof_id = proofs[winning->front()].id;

  outcome.per_proof_scores.emplace();
  for (const auto& [_, members] : groups)
    for (std::size_t i : members)
      (*outcome.per_proof_scores)[proofs[i].id] = static_cast<double>(members.size());
  return outcome;
}

SelectionArtifacts select_judge_only(Backend& backend, const PromptLibrary& library,
                                     const Problem& problem, const std::vector<Proof>& proofs,
                                     const JudgeConfig& judge_config, std::uint64_t run_seed,
                                     int max_parallel) {
  if (proofs.empty()) throw Error(ErrorCode::InvalidArgument, "no candidate proofs");
  judge_config.validate();

  auto stage = judge_stage(backend, library, problem, proofs, judge_config, run_seed, max_parallel);

  SelectionArtifacts artifacts;
  artifacts.outcome.problem_id = problem.id;
  artifacts.outcome.selected_proof_id = proofs[static_cast<std::size_t>(stage.selected)].id;
  artifacts.outcome.method = SelectionMethod::JudgeOnly;
  artifacts.outcome.ledger = ComputeLedger::counts(
      static_cast<std::int64_t>(proofs.size()), 0,
      static_cast<std::int64_t>(proofs.size()) * judge_config.n_j);
  artifacts.outcome.per_proof_scores = std::move(stage.scores);
  artifacts.judgements = std::move(stage.records);
  return artifacts;
}

SelectionArtifacts select_knockout(Backend& backend, const PromptLibrary& library,
                                   const Problem& problem, const std::vector<Proof>& proofs,
                                   std::uint64_t run_seed, int max_parallel) {
  auto knockout =
      knockout_select(backend, library, problem, proofs, 1, run_seed, {}, max_parallel);

  SelectionArtifacts artifacts;
  artifacts.outcome.problem_id = problem.id;
  artifacts.outcome.selected_proof_id = knockout.survivors.front().id;
  artifacts.outcome.method = SelectionMethod::Knockout;
  artifacts.outcome.ledger = ComputeLedger::counts(
      static_cast<std::int64_t>(proofs.size()), knockout.ledger.comparison_calls, 0);
  artifacts.matches = std::move(knockout.matches);
  return artifacts;
}

SelectionArtifacts select_pairwise(Backend& backend, const PromptLibrary& library,
                                   const Problem& problem, const std::vector<Proof>& proofs,
                                   std::uint64_t run_seed, int max_parallel) {
  auto pairwise = pairwise_tournament(backend, library, problem, proofs, run_seed, max_parallel);

  SelectionArtifacts artifacts;
  artifacts.outcome = std::move(pairwise.outcome);
  artifacts.outcome.ledger = ComputeLedger::counts(
      static_cast<std::int64_t>(proofs.size()), artifacts.outcome.ledger.comparison_calls, 0);
  artifacts.matches = std::move(pairwise.matches);
  return artifacts;
}

SelectionArtifacts select_hybrid(Backend& backend, const PromptLibrary& library,
                                 const Problem& problem, const std::vector<Proof>& proofs,
                                 const HybridConfig& config, const JudgeConfig& judge_config,
                                 std::uint64_t run_seed, int max_parallel) {
  config.validate();
  if (static_cast<int>(proofs.size()) != config.n_p)
    throw Error(ErrorCode::InvalidConfig, "candidate count does not match n_p");
  if (config.n_s > 1 && config.n_j < 1)
    throw Error(ErrorCode::InvalidConfig,
                "n_j must be >= 1 when multiple survivors need a winner");

  SelectionArtifacts artifacts;
  artifacts.outcome.problem_id = problem.id;
  artifacts.outcome.method = SelectionMethod::Hybrid;

  std::vector<Proof> survivors = proofs;
  std::int64_t comparisons = 0;
  if (config.n_s < config.n_p) {
    auto knockout = knockout_select(backend, library, problem, proofs, config.n_s, run_seed, {},
                                    max_parallel);
    survivors = std::move(knockout.survivors);
    comparisons = knockout.ledger.comparison_calls;
    artifacts.matches = std::move(knockout.matches);
  }

  std::int64_t judgements = 0;
  if (config.n_j >= 1) {
    JudgeConfig stage_config = judge_config;
    stage_config.n_j = config.n_j;
    auto stage =
        judge_stage(backend, library, problem, survivors, stage_config, run_seed, max_parallel);
    judgements = static_cast<std::int64_t>(survivors.size()) * config.n_j;
    artifacts.outcome.selected_proof_id =
        survivors[static_cast<std::size_t>(stage.selected)].id;
    artifacts.outcome.per_proof_scores = std::move(stage.scores);
    artifacts.judgements = std::move(stage.records);
  } else {
    artifacts.outcome.selected_proof_id = survivors.front().id;
  }

  artifacts.outcome.ledger =
      ComputeLedger::counts(config.n_p, comparisons, judgements);
  return artifacts;
}

SelectionArtifacts run_hybrid(Backend& backend, const PromptLibrary& library,
                              const Problem& problem, const HybridConfig& config,
                              const JudgeConfig& judge_config, const GenerationConfig& generation,
                              std::uint64_t run_seed, int max_parallel) {
  config.validate();
  GenerationConfig stage = generation;
  stage.n_p = config.n_p;
  auto proofs = generate_candidates(backend, library, problem, stage, run_seed, max_parallel);
  return select_hybrid(backend, library, problem, proofs, config, judge_config, run_seed,
                       max_parallel);
}

ComputeLedger compute_cost(const HybridConfig& config) {
  config.validate();
  return ComputeLedger::counts(config.n_p, config.n_p - config.n_s,
                               static_cast<std::int64_t>(config.n_s) * config.n_j);
}

}  // namespace proofselect
