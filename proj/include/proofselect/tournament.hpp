#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "proofselect/backend.hpp"
#include "proofselect/prompts.hpp"
#include "proofselect/types.hpp"

namespace proofselect {

struct MatchResult {
  std::pair<std::string, std::string> proof_ids;  // bracket order
  std::string winner;
  std::string raw_text;
  std::pair<std::string, std::string> presentation_order;  // first shown, second shown
  int round = 0;
  // Winner defaulted to the first-shown proof after a selection parse
  // failure; recorded so audits can quantify the incidence.
  bool parse_fallback = false;
};

// One match as written to matches.jsonl.
struct MatchRecord {
  std::string problem_id;
  MatchResult result;
  std::uint64_t seed = 0;
};

struct BracketRound {
  std::vector<std::pair<std::string, std::string>> matches;
  std::vector<std::string> byes;
};

struct Bracket {
  std::vector<BracketRound> rounds;
};

struct KnockoutOptions {
  // When set, round 1 pads to the next power of two with byes; otherwise
  // n_p/n_s must already be a power of two.
  bool allow_byes = false;
};

struct KnockoutResult {
  std::vector<Proof> survivors;  // bracket order
  Bracket bracket;
  std::vector<MatchRecord> matches;
  ComputeLedger ledger;  // comparison calls only
};

struct PairwiseResult {
  SelectionOutcome outcome;  // per_proof_scores holds win counts
  std::vector<MatchRecord> matches;
};

// Single GenSelect comparison between two proofs. Presentation order is
// randomized from the run seed and recorded alongside the result.
MatchResult compare(Backend& backend, const PromptLibrary& library, const Problem& problem,
                    const Proof& a, const Proof& b, std::uint64_t run_seed, int round = 0);

// Round-robin over all C(n,2) pairs; most wins takes the selection. Ties
// break by fewest head-to-head losses among the tied, then seeded random.
PairwiseResult pairwise_tournament(Backend& backend, const PromptLibrary& library,
                                   const Problem& problem, const std::vector<Proof>& proofs,
                                   std::uint64_t run_seed, int max_parallel = 1);

// Single-elimination rounds down to n_s survivors: exactly n_p - n_s
// comparisons. Each round shuffles the field from the run seed and pairs
// adjacent entries; matches within a round may run concurrently.
KnockoutResult knockout_select(Backend& backend, const PromptLibrary& library,
                               const Problem& problem, const std::vector<Proof>& proofs,
                               int n_s, std::uint64_t run_seed,
                               const KnockoutOptions& options = {}, int max_parallel = 1);

}  // namespace proofselect
