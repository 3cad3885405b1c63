#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "proofselect/mock_backend.hpp"
#include "proofselect/pipeline.hpp"
#include "test_helpers.hpp"

using namespace proofselect;
using namespace proofselect::testing;

namespace {

JudgeConfig binary_judge(int n_j) {
  JudgeConfig config;
  config.n_j = n_j;
  return config;
}

}  // namespace

TEST_CASE("generate_candidates") {
  MockBackend backend({0.0, 1.0, 77});
  auto problem = make_problem("p1");
  GenerationConfig config;
  config.n_p = 4;

  auto proofs = generate_candidates(backend, PromptLibrary::builtin(), problem, config, 3);
  REQUIRE(proofs.size() == 4);
  std::set<std::string> texts;
  for (const auto& proof : proofs) {
    CHECK(proof.problem_id == "p1");
    CHECK(proof.generator == "mock");
    CHECK(!proof.text.empty());
    texts.insert(proof.text);
  }
  CHECK(texts.size() == 4);  // distinct deterministic texts
  CHECK(proofs[0].id == "p1#c000");
  CHECK(backend.ledger_snapshot().generation_calls == 4);

  SUBCASE("regeneration with the same seed is identical") {
    MockBackend replay({0.0, 1.0, 77});
    auto again = generate_candidates(replay, PromptLibrary::builtin(), problem, config, 3);
    for (std::size_t i = 0; i < proofs.size(); ++i) CHECK(again[i].text == proofs[i].text);
  }

  SUBCASE("n_p=1 is the pass@1 regime") {
    MockBackend one({0.0, 1.0, 1});
    GenerationConfig single;
    single.n_p = 1;
    auto only = generate_candidates(one, PromptLibrary::builtin(), problem, single, 3);
    CHECK(only.size() == 1);
    CHECK(one.ledger_snapshot().total_calls == 1);
  }

  SUBCASE("n_p=128 charges 128 generation calls") {
    MockBackend big({0.0, 1.0, 2});
    GenerationConfig many;
    many.n_p = 128;
    generate_candidates(big, PromptLibrary::builtin(), problem, many, 3, 16);
    CHECK(big.ledger_snapshot().generation_calls == 128);
  }

  SUBCASE("final_answer_mode appends the boxed instruction") {
    // The mock emits boxed answers regardless; assert on the prompt instead.
    class CapturePrompt : public Backend {
     public:
      std::string last;
      std::string model_id() const override { return "capture"; }

     protected:
      std::string do_complete(const CompletionRequest& request) override {
        last = request.prompt;
        return "text \\boxed{1}";
      }
    } capture;
    GenerationConfig boxed;
    boxed.n_p = 1;
    boxed.final_answer_mode = true;
    generate_candidates(capture, PromptLibrary::builtin(), problem, boxed, 3);
    CHECK(capture.last.find(kBoxedAnswerInstruction) != std::string::npos);
  }

  SUBCASE("backend failures surface as GenerationIncomplete") {
    class Flaky : public Backend {
     public:
      std::string model_id() const override { return "flaky"; }

     protected:
      std::string do_complete(const CompletionRequest& request) override {
        if (request.seed % 2 == 0) throw Error(ErrorCode::Timeout, "synthetic timeout");
        return "ok";
      }
    } flaky;
    GenerationConfig config2;
    config2.n_p = 8;
    try {
      generate_candidates(flaky, PromptLibrary::builtin(), problem, config2, 3);
      FAIL("expected GenerationIncomplete");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GenerationIncomplete);
    }
  }
}

TEST_CASE("extract_final_answer: last boxed expression with balanced braces") {
  CHECK(extract_final_answer("thus \\boxed{42}") == "42");
  CHECK(extract_final_answer("\\boxed{1} then \\boxed{2}") == "2");
  CHECK(extract_final_answer("\\boxed{\\frac{1}{2}}") == "\\frac{1}{2}");
  CHECK(extract_final_answer("\\boxed{ 7 }") == "7");
  CHECK(!extract_final_answer("no boxed content").has_value());
  CHECK(!extract_final_answer("\\boxed{unbalanced").has_value());
}

TEST_CASE("majority_vote_final_answer") {
  auto with_answer = [](std::string id, const std::string& answer) {
    Proof proof;
    proof.id = std::move(id);
    proof.problem_id = "p1";
    proof.text = "argument ... \\boxed{" + answer + "}";
    proof.generator = "fixture";
    return proof;
  };

  SUBCASE("answers {7, 7, 3} pick a proof answering 7") {
    auto outcome = majority_vote_final_answer(
        {with_answer("a", "7"), with_answer("b", "7"), with_answer("c", "3")}, 5);
    CHECK(outcome.selected_proof_id == "a");
    CHECK(outcome.method == SelectionMethod::MajorityVote);
    CHECK(outcome.per_proof_scores->at("a") == 2.0);
    CHECK(outcome.per_proof_scores->at("c") == 1.0);
  }

  SUBCASE("ties resolve by seeded random, reproducibly") {
    std::vector<Proof> proofs = {with_answer("a", "1"), with_answer("b", "2")};
    auto first = majority_vote_final_answer(proofs, 11);
    for (int i = 0; i < 5; ++i)
      CHECK(majority_vote_final_answer(proofs, 11).selected_proof_id ==
            first.selected_proof_id);
    // Some seed must pick the other group.
    bool flipped = false;
    for (std::uint64_t seed = 0; seed < 64 && !flipped; ++seed)
      flipped = majority_vote_final_answer(proofs, seed).selected_proof_id !=
                first.selected_proof_id;
    CHECK(flipped);
  }

  SUBCASE("512 candidates charge 512 generation calls") {
    std::vector<Proof> proofs;
    for (int i = 0; i < 512; ++i)
      proofs.push_back(with_answer("q" + std::to_string(i), i % 3 == 0 ? "9" : "4"));
    auto outcome = majority_vote_final_answer(proofs, 1);
    CHECK(outcome.ledger.total_calls == 512);
    CHECK(outcome.ledger.generation_calls == 512);
  }

  SUBCASE("proofs without boxed answers are excluded and recorded") {
    Proof bare;
    bare.id = "bare";
    bare.problem_id = "p1";
    bare.text = "no answer";
    auto outcome =
        majority_vote_final_answer({with_answer("a", "7"), bare, with_answer("b", "7")}, 5);
    CHECK(outcome.selected_proof_id == "a");
    REQUIRE(outcome.excluded_proof_ids.size() == 1);
    CHECK(outcome.excluded_proof_ids[0] == "bare");

    CHECK_THROWS_AS(majority_vote_final_answer({bare}, 5), Error);
  }
}

TEST_CASE("compute_cost closed forms match the reference table") {
  struct Row {
    HybridConfig config;
    std::int64_t expected;
  };
  const Row rows[] = {
      {{64, 1, 0}, 127},     {{128, 1, 0}, 255},   {{256, 1, 0}, 511},
      {{512, 1, 0}, 1023},   {{256, 256, 32}, 8448}, {{128, 16, 32}, 752},
      {{256, 16, 32}, 1008}, {{512, 16, 32}, 1520}, {{128, 128, 32}, 4224},
      {{1, 1, 0}, 1},
  };
  for (const auto& row : rows) {
    INFO("config (", row.config.n_p, ",", row.config.n_s, ",", row.config.n_j, ")");
    auto ledger = compute_cost(row.config);
    CHECK(ledger.total_calls == row.expected);
    CHECK(ledger.generation_calls == row.config.n_p);
    CHECK(ledger.comparison_calls == row.config.n_p - row.config.n_s);
    CHECK(ledger.judgement_calls ==
          static_cast<std::int64_t>(row.config.n_s) * row.config.n_j);
  }
  // (256,256,32) splits as 256 + 0 + 8192 and (512,16,32) as 512 + 496 + 512.
  CHECK(compute_cost({256, 256, 32}).judgement_calls == 8192);
  CHECK(compute_cost({512, 16, 32}).comparison_calls == 496);
}

TEST_CASE("executed mock runs reconcile with the closed-form ledger") {
  auto problem = make_problem("p1");
  for (const HybridConfig config : {HybridConfig{16, 1, 0}, HybridConfig{16, 4, 3},
                                    HybridConfig{8, 8, 5}, HybridConfig{1, 1, 0}}) {
    MockBackend backend({0.0, 1.0, 99});
    auto artifacts = run_hybrid(backend, PromptLibrary::builtin(), problem, config,
                                binary_judge(std::max(1, config.n_j)), {}, 13, 8);
    INFO("config (", config.n_p, ",", config.n_s, ",", config.n_j, ")");
    CHECK(backend.ledger_snapshot() == compute_cost(config));
    CHECK(artifacts.outcome.ledger == compute_cost(config));
  }
}

TEST_CASE("hybrid selects a Correct proof under perfect oracles whenever one exists") {
  auto problem = make_problem("p1");
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    MockBackend backend({0.0, 1.0, seed});
    auto proofs = make_candidates("p1", 16, {static_cast<int>(seed % 16), 3});
    auto artifacts = select_hybrid(backend, PromptLibrary::builtin(), problem, proofs,
                                   {16, 4, 5}, binary_judge(5), seed, 8);
    auto selected = *std::find_if(proofs.begin(), proofs.end(), [&](const Proof& p) {
      return p.id == artifacts.outcome.selected_proof_id;
    });
    CHECK(selected.label->as_verdict() == Verdict::Correct);
  }
}

TEST_CASE("degenerate hybrid configurations") {
  auto problem = make_problem("p1");
  auto proofs = make_candidates("p1", 8, {2, 6});

  SUBCASE("n_s = n_p matches pure judge-then-argmax") {
    MockBackend backend({0.15, 1.0, 3});
    auto hybrid = select_hybrid(backend, PromptLibrary::builtin(), problem, proofs, {8, 8, 5},
                                binary_judge(5), 21, 4);
    MockBackend backend2({0.15, 1.0, 3});
    auto judge_only = select_judge_only(backend2, PromptLibrary::builtin(), problem, proofs,
                                        binary_judge(5), 21, 4);
    CHECK(hybrid.outcome.selected_proof_id == judge_only.outcome.selected_proof_id);
    CHECK(*hybrid.outcome.per_proof_scores == *judge_only.outcome.per_proof_scores);
    CHECK(hybrid.outcome.ledger.judgement_calls ==
          judge_only.outcome.ledger.judgement_calls);
  }

  SUBCASE("n_s = 1, n_j = 0 matches pure knockout") {
    MockBackend backend({0.0, 0.85, 5});
    auto hybrid = select_hybrid(backend, PromptLibrary::builtin(), problem, proofs, {8, 1, 0},
                                binary_judge(1), 22, 4);
    MockBackend backend2({0.0, 0.85, 5});
    auto knockout = select_knockout(backend2, PromptLibrary::builtin(), problem, proofs, 22, 4);
    CHECK(hybrid.outcome.selected_proof_id == knockout.outcome.selected_proof_id);
    CHECK(hybrid.outcome.ledger.comparison_calls ==
          knockout.outcome.ledger.comparison_calls);
  }

  SUBCASE("n_j = 0 with multiple survivors is rejected") {
    MockBackend backend({0.0, 1.0, 5});
    CHECK_THROWS_AS(select_hybrid(backend, PromptLibrary::builtin(), problem, proofs,
                                  {8, 4, 0}, binary_judge(1), 1),
                    Error);
  }

  SUBCASE("candidate count must equal n_p") {
    MockBackend backend({0.0, 1.0, 5});
    CHECK_THROWS_AS(select_hybrid(backend, PromptLibrary::builtin(), problem, proofs,
                                  {16, 4, 2}, binary_judge(2), 1),
                    Error);
  }
}

TEST_CASE("hybrid argmax tie favors earlier bracket order") {
  // Two survivors, both judged perfectly Correct: the tie goes to the one
  // that entered the judging stage first.
  auto problem = make_problem("p1");
  auto proofs = make_candidates("p1", 4, {0, 1, 2, 3});
  MockBackend backend({0.0, 1.0, 9});
  auto artifacts = select_hybrid(backend, PromptLibrary::builtin(), problem, proofs, {4, 2, 3},
                                 binary_judge(3), 2, 1);
  REQUIRE(artifacts.outcome.per_proof_scores->size() == 2);
  // Every score is 1.0; the winner must be the first survivor in the
  // recorded judgement order.
  CHECK(artifacts.outcome.selected_proof_id == artifacts.judgements.front().proof_id);
}

TEST_CASE("every judgement parse failing raises AllSurvivorsUnscored") {
  ScriptedBackend backend({"never says anything parseable"});
  auto problem = make_problem("p1");
  auto proofs = make_candidates("p1", 2, {0});
  try {
    select_judge_only(backend, PromptLibrary::builtin(), problem, proofs, binary_judge(3), 1);
    FAIL("expected AllSurvivorsUnscored");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllSurvivorsUnscored);
  }
}

TEST_CASE("judge-only artifacts carry one record per (proof, sample)") {
  MockBackend backend({0.0, 1.0, 31});
  auto problem = make_problem("p1");
  auto proofs = make_candidates("p1", 3, {1});
  auto artifacts = select_judge_only(backend, PromptLibrary::builtin(), problem, proofs,
                                     binary_judge(4), 7, 2);
  CHECK(artifacts.judgements.size() == 12);
  CHECK(artifacts.outcome.ledger.judgement_calls == 12);
  CHECK(artifacts.outcome.selected_proof_id == "p1#q1");
  CHECK(artifacts.outcome.per_proof_scores->at("p1#q1") == 1.0);
  CHECK(artifacts.outcome.per_proof_scores->at("p1#q0") == 0.0);
}
