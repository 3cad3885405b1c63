#include "proofselect/judge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "proofselect/parallel.hpp"
#include "proofselect/rng.hpp"

namespace proofselect {

namespace {

const char* kDecompositionPrompt =
    "Split the following proof into its individual reasoning steps.\n"
    "Return the proof text verbatim inside <decomposition></decomposition> tags, "
    "inserting the separator token <step_break/> between consecutive steps.\n"
    "Do not add, remove, or rewrite any other characters of the proof.\n"
    "\n"
    "### Problem Statement:\n"
    "{problem}\n"
    "\n"
    "### Proof:\n"
    "<proof_text>\n"
    "{proof}\n"
    "</proof_text>\n";

const char* kStepJudgePrompt =
    "You are judging a single step of a proof for a math problem. The full proof is "
    "shown for context with the step under review wrapped in "
    "<current_step></current_step> tags. Judge ONLY whether that step is correct, "
    "assuming every earlier step holds.\n"
    "\n"
    "If the step is correct, end your analysis with:\n"
    "<judgement>Judgement: Yes</judgement>\n"
    "If the step is incorrect, end your analysis with:\n"
    "<judgement>Judgement: No</judgement>\n"
    "\n"
    "### Problem Statement:\n"
    "{problem}\n"
    "\n"
    "### Proof with the current step highlighted:\n"
    "<proof_text>\n"
    "{highlighted}\n"
    "</proof_text>\n";

std::string substitute(std::string text, const std::string& key, const std::string& value) {
  auto pos = text.find(key);
  if (pos != std::string::npos) text.replace(pos, key.size(), value);
  return text;
}

ParsedJudgement parse_for_mode(const std::string& raw, JudgeMode mode) {
  return mode == JudgeMode::Binary ? parse_binary_judgement(raw) : parse_seven_point(raw);
}

// Per-sample binary vote, honoring the failure policy. Returns nullopt for
// excluded samples. Seven-point samples binarize at >= 6.
std::optional<bool> binary_vote(const ParsedJudgement& parsed, ParseFailurePolicy policy) {
  switch (parsed.kind) {
    case ParsedJudgement::Kind::Verdict: return parsed.verdict == Verdict::Correct;
    case ParsedJudgement::Kind::Score: return parsed.score >= 6;
    case ParsedJudgement::Kind::Failure:
      if (policy == ParseFailurePolicy::CountAsIncorrect) return false;
      return std::nullopt;
  }
  return std::nullopt;
}

std::uint64_t choose_exact(int n, int k) {
  // Stays within uint64 for n <= 62.
  unsigned long long result = 1;
  if (k > n - k) k = n - k;
  for (int i = 0; i < k; ++i) {
    result = static_cast<unsigned long long>(
        (static_cast<unsigned __int128>(result) * static_cast<unsigned>(n - i)) /
        static_cast<unsigned>(i + 1));
  }
  return result;
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

void JudgeConfig::validate() const {
  if (n_j < 1) throw Error(ErrorCode::InvalidConfig, "n_j must be >= 1");
  TemplateName effective = effective_template();
  bool seven_point_template = effective == TemplateName::SevenPointGrading ||
                              effective == TemplateName::SevenPointRubric;
  if ((mode == JudgeMode::SevenPoint) != seven_point_template)
    throw Error(ErrorCode::InvalidConfig,
                std::string("template ") + to_string(effective) +
                    " does not match the configured judge mode");
}

TemplateName JudgeConfig::effective_template() const {
  if (!include_rubric) return template_name;
  if (template_name == TemplateName::OPC) return TemplateName::OPC_Rubric;
  if (template_name == TemplateName::SevenPointGrading) return TemplateName::SevenPointRubric;
  return template_name;
}

Bindings judge_bindings(const Problem& problem, const Proof& proof, const JudgeConfig& config) {
  Bindings bindings{{"problem", problem.statement}, {"proof", proof.text}};
  const auto& required = required_placeholders(config.effective_template());
  auto needs = [&](const char* name) {
    return std::find(required.begin(), required.end(), name) != required.end();
  };

  if (needs("rubric")) {
    // Final-answer problems use the expected answer as the rubric.
    if (problem.rubric)
      bindings["rubric"] = *problem.rubric;
    else if (problem.expected_final_answer)
      bindings["rubric"] = *problem.expected_final_answer;
    else
      throw Error(ErrorCode::InvalidArgument,
                  "problem " + problem.id + " has no rubric or expected final answer");
  }
  if (needs("ground_truth_proof")) {
    if (!problem.ground_truth_proof)
      throw Error(ErrorCode::InvalidArgument,
                  "problem " + problem.id + " has no ground-truth proof");
    bindings["ground_truth_proof"] = *problem.ground_truth_proof;
  }
  return bindings;
}

std::string build_judge_prompt(const PromptLibrary& library, const Problem& problem,
                               const Proof& proof, const JudgeConfig& config) {
  return render(library.get(config.effective_template()),
                judge_bindings(problem, proof, config));
}

std::vector<JudgementSample> sample_judgements(Backend& backend, const PromptLibrary& library,
                                               const Problem& problem, const Proof& proof,
                                               const JudgeConfig& config, std::uint64_t run_seed,
                                               int max_parallel) {
  config.validate();
  const std::string prompt = build_judge_prompt(library, problem, proof, config);

  std::vector<JudgementSample> samples(static_cast<std::size_t>(config.n_j));
  parallel_for(samples.size(), max_parallel, [&](std::size_t i) {
    CompletionRequest request;
    request.prompt = prompt;
    request.seed = derive_seed(run_seed, {proof.id}, {i});
    request.tag = CallKind::Judgement;
    std::string raw = backend.complete(request);
    samples[i].raw_text = raw;
    samples[i].parsed = parse_for_mode(raw, config.mode);
    samples[i].summary = extract_summary(raw);
  });
  return samples;
}

AggregateJudgement aggregate(const std::vector<JudgementSample>& samples, JudgeMode mode,
                             ParseFailurePolicy policy) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "no samples to aggregate");

  AggregateJudgement result;
  result.n_samples = static_cast<int>(samples.size());

  if (mode == JudgeMode::Binary) {
    for (const auto& sample : samples) {
      auto vote = binary_vote(sample.parsed, policy);
      if (!vote) continue;
      (*vote ? result.yes_votes : result.no_votes)++;
    }
    int counted = result.yes_votes + result.no_votes;
    if (counted == 0)
      throw Error(ErrorCode::AllSamplesUnparseable, "every judgement failed to parse");
    result.verdict = result.yes_votes > result.no_votes ? Verdict::Correct : Verdict::Incorrect;
    result.mean_score = static_cast<double>(result.yes_votes) / counted;
    return result;
  }

  double sum = 0;
  int counted = 0;
  for (const auto& sample : samples) {
    int score;
    if (sample.parsed.kind == ParsedJudgement::Kind::Score) {
      score = sample.parsed.score;
    } else if (policy == ParseFailurePolicy::CountAsIncorrect) {
      score = 0;
    } else {
      continue;
    }
    sum += score;
    ++counted;
    (score >= 6 ? result.yes_votes : result.no_votes)++;
  }
  if (counted == 0)
    throw Error(ErrorCode::AllSamplesUnparseable, "every judgement failed to parse");
  result.mean_score = sum / counted;
  result.verdict = result.mean_score >= 6.0 ? Verdict::Correct : Verdict::Incorrect;
  return result;
}

double majority_at_k(const std::vector<Verdict>& samples, int k) {
  const int n = static_cast<int>(samples.size());
  if (k < 1 || k > n)
    throw Error(ErrorCode::InvalidArgument, "k must be in [1, n]");
  const int yes = static_cast<int>(
      std::count(samples.begin(), samples.end(), Verdict::Correct));

  // Subsets are exchangeable, so the expectation over all C(n,k) subsets is
  // the hypergeometric tail: P(#yes in subset > k/2).
  const int j_min = k / 2 + 1;
  const int j_max = std::min(k, yes);
  if (j_min > j_max) return 0.0;

  if (n <= 62) {
    unsigned long long favorable = 0;
    for (int j = j_min; j <= j_max; ++j) {
      if (k - j > n - yes) continue;
      favorable += choose_exact(yes, j) * choose_exact(n - yes, k - j);
    }
    return static_cast<double>(favorable) / static_cast<double>(choose_exact(n, k));
  }

  double total = 0;
  const double log_all = log_choose(n, k);
  for (int j = j_min; j <= j_max; ++j) {
    if (k - j > n - yes) continue;
    total += std::exp(log_choose(yes, j) + log_choose(n - yes, k - j) - log_all);
  }
  return std::min(total, 1.0);
}

double majority_at_k_sampled(const std::vector<Verdict>& samples, int k, int draws,
                             std::uint64_t seed) {
  const int n = static_cast<int>(samples.size());
  if (k < 1 || k > n)
    throw Error(ErrorCode::InvalidArgument, "k must be in [1, n]");
  if (draws < 1) throw Error(ErrorCode::InvalidArgument, "draws must be >= 1");

  Rng rng(derive_seed(seed, {"maj_at_k"}, {static_cast<std::uint64_t>(k)}));
  std::vector<int> indices(samples.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<int>(i);

  int correct_majorities = 0;
  for (int d = 0; d < draws; ++d) {
    // Partial Fisher-Yates: the first k entries form the subset.
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(indices[i], indices[j]);
    }
    int yes = 0;
    for (int i = 0; i < k; ++i)
      if (samples[static_cast<std::size_t>(indices[i])] == Verdict::Correct) ++yes;
    if (2 * yes > k) ++correct_majorities;
  }
  return static_cast<double>(correct_majorities) / draws;
}

JudgementSample judge_genselect(Backend& backend, const PromptLibrary& library,
                                const Problem& problem, const Proof& proof,
                                const std::vector<JudgementSample>& samples,
                                std::uint64_t run_seed) {
  if (samples.empty())
    throw Error(ErrorCode::InvalidArgument, "judge_genselect needs at least one sample");

  const int n = static_cast<int>(samples.size());
  std::vector<std::string> texts;
  texts.reserve(samples.size());
  for (const auto& sample : samples) texts.push_back(sample.raw_text);
  const std::string context =
      problem.statement + "\n\n[Proof Under Review]\n\n" + proof.text;
  Bindings bindings{{"num_participants", std::to_string(n)},
                    {"solutions", format_solutions_block(context, texts)}};
  const std::string prompt = render(library.get(TemplateName::GenSelect), bindings);

  // One selection round per sample seed, majority-voted.
  std::vector<int> picks;
  for (int round = 0; round < n; ++round) {
    CompletionRequest request;
    request.prompt = prompt;
    request.seed = derive_seed(run_seed, {proof.id, "judge_genselect"},
                               {static_cast<std::uint64_t>(round)});
    request.tag = CallKind::Comparison;
    auto parsed = parse_best_solution(backend.complete(request), n);
    if (parsed.ok()) picks.push_back(*parsed.index - 1);
  }

  if (picks.empty()) {
    // Selection never parsed; fall back to plain aggregation.
    auto agg = aggregate(samples, JudgeMode::Binary, ParseFailurePolicy::ExcludeFromVotes);
    for (const auto& sample : samples)
      if (sample.parsed.kind == ParsedJudgement::Kind::Verdict &&
          sample.parsed.verdict == agg.verdict)
        return sample;
    return samples.front();
  }

  int yes = 0, no = 0;
  for (int pick : picks) {
    const auto& parsed = samples[static_cast<std::size_t>(pick)].parsed;
    if (parsed.kind != ParsedJudgement::Kind::Verdict) continue;
    (parsed.verdict == Verdict::Correct ? yes : no)++;
  }
  Verdict winner = yes > no ? Verdict::Correct : Verdict::Incorrect;

  // Return the most frequently selected sample carrying the winning verdict.
  std::vector<int> tally(samples.size(), 0);
  for (int pick : picks) tally[static_cast<std::size_t>(pick)]++;
  int best = -1;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (tally[i] == 0) continue;
    if (samples[i].parsed.kind != ParsedJudgement::Kind::Verdict ||
        samples[i].parsed.verdict != winner)
      continue;
    if (best < 0 || tally[i] > tally[static_cast<std::size_t>(best)])
      best = static_cast<int>(i);
  }
  if (best < 0) best = picks.front();
  return samples[static_cast<std::size_t>(best)];
}

void StepDecomposition::validate(const std::string& proof_text) const {
  if (steps.empty())
    throw Error(ErrorCode::DecompositionFailed, "decomposition has no steps");
  std::size_t cursor = 0;
  for (const auto& step : steps) {
    if (step.offset != cursor || step.length == 0)
      throw Error(ErrorCode::DecompositionFailed, "step spans must tile the proof in order");
    if (step.offset + step.length > proof_text.size())
      throw Error(ErrorCode::DecompositionFailed, "step span out of bounds");
    if (proof_text.compare(step.offset, step.length, step.text) != 0)
      throw Error(ErrorCode::DecompositionFailed, "step text does not match its span");
    cursor += step.length;
  }
  if (cursor != proof_text.size())
    throw Error(ErrorCode::DecompositionFailed, "steps do not cover the proof text");
}

StepDecomposition parse_decomposition(const std::string& raw, const std::string& proof_text) {
  auto open = raw.rfind(step_format::kDecompositionOpen);
  auto close = raw.rfind(step_format::kDecompositionClose);
  if (open == std::string::npos || close == std::string::npos || close <= open)
    throw Error(ErrorCode::DecompositionFailed, "no decomposition tag in response");
  open += std::string_view(step_format::kDecompositionOpen).size();
  std::string body = raw.substr(open, close - open);

  StepDecomposition result;
  std::size_t cursor = 0;
  std::size_t start = 0;
  const std::string breaker = step_format::kBreakToken;
  while (true) {
    std::size_t pos = body.find(breaker, start);
    std::string segment =
        pos == std::string::npos ? body.substr(start) : body.substr(start, pos - start);
    if (!segment.empty()) {
      result.steps.push_back({cursor, segment.size(), segment});
      cursor += segment.size();
    }
    if (pos == std::string::npos) break;
    start = pos + breaker.size();
  }
  result.validate(proof_text);
  return result;
}

AggregateJudgement step_based_judge(Backend& backend, const Problem& problem,
                                    const Proof& proof, std::uint64_t run_seed,
                                    int max_parallel) {
  CompletionRequest decompose;
  decompose.prompt = substitute(substitute(kDecompositionPrompt, "{problem}", problem.statement),
                                "{proof}", proof.text);
  decompose.seed = derive_seed(run_seed, {proof.id, "decompose"});
  decompose.tag = CallKind::Judgement;
  StepDecomposition decomposition =
      parse_decomposition(backend.complete(decompose), proof.text);

  const std::size_t n = decomposition.steps.size();
  std::vector<ParsedJudgement> verdicts(n);
  parallel_for(n, max_parallel, [&](std::size_t i) {
    const auto& step = decomposition.steps[i];
    std::string highlighted = proof.text;
    highlighted.insert(step.offset + step.length, step_format::kStepClose);
    highlighted.insert(step.offset, step_format::kStepOpen);

    CompletionRequest request;
    request.prompt = substitute(substitute(kStepJudgePrompt, "{problem}", problem.statement),
                                "{highlighted}", highlighted);
    request.seed = derive_seed(run_seed, {proof.id, "step"}, {i});
    request.tag = CallKind::Judgement;
    verdicts[i] = parse_binary_judgement(backend.complete(request));
  });

  AggregateJudgement result;
  result.n_samples = static_cast<int>(n);
  for (const auto& parsed : verdicts) {
    bool correct = parsed.kind == ParsedJudgement::Kind::Verdict &&
                   parsed.verdict == Verdict::Correct;
    (correct ? result.yes_votes : result.no_votes)++;
  }
  result.verdict = result.no_votes == 0 ? Verdict::Correct : Verdict::Incorrect;
  result.mean_score = static_cast<double>(result.yes_votes) / result.n_samples;
  return result;
}

std::map<std::string, double> ensemble_mean(
    const std::map<std::string, std::map<std::string, double>>& per_judge_scores) {
  if (per_judge_scores.empty())
    throw Error(ErrorCode::InvalidArgument, "no judges to ensemble");

  const auto& reference = per_judge_scores.begin()->second;
  std::map<std::string, double> result;
  for (const auto& [judge_id, scores] : per_judge_scores) {
    if (scores.size() != reference.size())
      throw Error(ErrorCode::KeyMismatch, "judge " + judge_id + " scored a different proof set");
    for (const auto& [proof_id, score] : scores) {
      if (!reference.count(proof_id))
        throw Error(ErrorCode::KeyMismatch, "judge " + judge_id + " scored a different proof set");
      result[proof_id] += score;
    }
  }
  for (auto& [_, score] : result) score /= static_cast<double>(per_judge_scores.size());
  return result;
}

}  // namespace proofselect
