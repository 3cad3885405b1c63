#include "proofselect/tournament.hpp"

#include <algorithm>
#include <limits>

#include "proofselect/parallel.hpp"
#include "proofselect/rng.hpp"

namespace proofselect {

namespace {

bool is_power_of_two(int value) { return value > 0 && (value & (value - 1)) == 0; }

int next_power_of_two(int value) {
  int p = 1;
  while (p < value) p *= 2;
  return p;
}

}  // namespace

MatchResult compare(Backend& backend, const PromptLibrary& library, const Problem& problem,
                    const Proof& a, const Proof& b, std::uint64_t run_seed, int round) {
  if (a.id == b.id)
    throw Error(ErrorCode::InvalidArgument, "cannot compare a proof against itself");

  Rng order_rng(derive_seed(run_seed, {problem.id, a.id, b.id, "order"},
                            {static_cast<std::uint64_t>(round)}));
  const bool swap_order = order_rng.bernoulli(0.5);
  const Proof& first = swap_order ? b : a;
  const Proof& second = swap_order ? a : b;

  Bindings bindings{
      {"num_participants", "2"},
      {"solutions", format_solutions_block(problem.statement, {first.text, second.text})}};
  CompletionRequest request;
  request.prompt = render(library.get(TemplateName::GenSelect), bindings);
  request.seed = derive_seed(run_seed, {problem.id, a.id, b.id, "compare"},
                             {static_cast<std::uint64_t>(round)});
  request.tag = CallKind::Comparison;

  MatchResult result;
  result.proof_ids = {a.id, b.id};
  result.presentation_order = {first.id, second.id};
  result.round = round;
  result.raw_text = backend.complete(request);

  auto parsed = parse_best_solution(result.raw_text, 2);
  if (parsed.ok()) {
    result.winner = *parsed.index == 1 ? first.id : second.id;
  } else {
    result.winner = first.id;
    result.parse_fallback = true;
  }
  return result;
}

PairwiseResult pairwise_tournament(Backend& backend, const PromptLibrary& library,
                                   const Problem& problem, const std::vector<Proof>& proofs,
                                   std::uint64_t run_seed, int max_parallel) {
  const int n = static_cast<int>(proofs.size());
  if (n < 2)
    throw Error(ErrorCode::InvalidArgument, "pairwise tournament needs at least 2 proofs");

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::vector<MatchRecord> matches(pairs.size());
  parallel_for(pairs.size(), max_parallel, [&](std::size_t p) {
    auto [i, j] = pairs[p];
    matches[p] = {problem.id, compare(backend, library, problem, proofs[i], proofs[j], run_seed),
                  run_seed};
  });

  std::vector<int> wins(proofs.size(), 0);
  auto index_of = [&](const std::string& id) {
    for (std::size_t i = 0; i < proofs.size(); ++i)
      if (proofs[i].id == id) return static_cast<int>(i);
    return -1;
  };
  for (const auto& match : matches) wins[index_of(match.result.winner)]++;

  int best_wins = *std::max_element(wins.begin(), wins.end());
  std::vector<int> tied;
  for (int i = 0; i < n; ++i)
    if (wins[i] == best_wins) tied.push_back(i);

  int selected;
  if (tied.size() == 1) {
    selected = tied.front();
  } else {
    // Fewest losses in head-to-head play among the tied set.
    std::vector<int> losses(proofs.size(), 0);
    for (const auto& match : matches) {
      int a = index_of(match.result.proof_ids.first);
      int b = index_of(match.result.proof_ids.second);
      bool both_tied = std::count(tied.begin(), tied.end(), a) &&
                       std::count(tied.begin(), tied.end(), b);
      if (!both_tied) continue;
      int loser = match.result.winner == proofs[a].id ? b : a;
      losses[loser]++;
    }
    int fewest = std::numeric_limits<int>::max();
    for (int i : tied) fewest = std::min(fewest, losses[i]);
    std::vector<int> finalists;
    for (int i : tied)
      if (losses[i] == fewest) finalists.push_back(i);
    Rng rng(derive_seed(run_seed, {problem.id, "pairwise_tie"}));
    selected = finalists[rng.below(finalists.size())];
  }

  PairwiseResult result;
  result.outcome.problem_id = problem.id;
  result.outcome.selected_proof_id = proofs[selected].id;
  result.outcome.method = SelectionMethod::Pairwise;
  result.outcome.ledger = ComputeLedger::counts(0, static_cast<std::int64_t>(pairs.size()), 0);
  result.outcome.per_proof_scores.emplace();
  for (int i = 0; i < n; ++i)
    (*result.outcome.per_proof_scores)[proofs[i].id] = wins[i];
  result.matches = std::move(matches);
  return result;
}

KnockoutResult knockout_select(Backend& backend, const PromptLibrary& library,
                               const Problem& problem, const std::vector<Proof>& proofs,
                               int n_s, std::uint64_t run_seed, const KnockoutOptions& options,
                               int max_parallel) {
  const int n = static_cast<int>(proofs.size());
  if (n_s < 1 || n_s > n)
    throw Error(ErrorCode::InvalidBracket, "survivor count must be in [1, n_p]");
  if (!options.allow_byes) {
    if (n % n_s != 0 || !is_power_of_two(n / n_s))
      throw Error(ErrorCode::InvalidBracket,
                  "n_p/n_s must be a power of two (enable byes to pad)");
  } else if (n_s != n && !is_power_of_two(n_s)) {
    throw Error(ErrorCode::InvalidBracket, "with byes, n_s must be a power of two");
  }

  KnockoutResult result;
  std::vector<Proof> current = proofs;

  int round = 0;
  while (static_cast<int>(current.size()) > n_s) {
    Rng rng(derive_seed(run_seed, {problem.id, "knockout"},
                        {static_cast<std::uint64_t>(round)}));
    rng.shuffle(current);

    BracketRound bracket_round;
    int byes = 0;
    if (options.allow_byes) {
      byes = next_power_of_two(static_cast<int>(current.size())) -
             static_cast<int>(current.size());
      for (int i = 0; i < byes; ++i) bracket_round.byes.push_back(current[i].id);
    }

    std::vector<std::pair<int, int>> pairings;
    for (int i = byes; i + 1 < static_cast<int>(current.size()); i += 2)
      pairings.emplace_back(i, i + 1);
    for (auto [i, j] : pairings)
      bracket_round.matches.emplace_back(current[i].id, current[j].id);

    std::vector<MatchRecord> round_matches(pairings.size());
    parallel_for(pairings.size(), max_parallel, [&](std::size_t p) {
      auto [i, j] = pairings[p];
      round_matches[p] = {
          problem.id,
          compare(backend, library, problem, current[i], current[j], run_seed, round),
          run_seed};
    });

    std::vector<Proof> survivors;
    survivors.reserve(static_cast<std::size_t>(byes) + pairings.size());
    for (int i = 0; i < byes; ++i) survivors.push_back(current[i]);
    for (std::size_t p = 0; p < pairings.size(); ++p) {
      auto [i, j] = pairings[p];
      const auto& winner_id = round_matches[p].result.winner;
      survivors.push_back(winner_id == current[i].id ? current[i] : current[j]);
    }

    result.bracket.rounds.push_back(std::move(bracket_round));
    result.matches.insert(result.matches.end(), round_matches.begin(), round_matches.end());
    current = std::move(survivors);
    ++round;
  }

  result.survivors = std::move(current);
  result.ledger = ComputeLedger::counts(0, static_cast<std::int64_t>(result.matches.size()), 0);
  return result;
}

}  // namespace proofselect
