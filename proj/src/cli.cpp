#include "proofselect/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "proofselect/eval.hpp"
#include "proofselect/http_backend.hpp"
#include "proofselect/jsonl.hpp"
#include "proofselect/mock_backend.hpp"
#include "proofselect/pipeline.hpp"
#include "proofselect/rng.hpp"
#include "proofselect/simulator.hpp"

namespace proofselect {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
  out << content;
}

// Shared flags for subcommands that talk to a backend.
struct BackendFlags {
  std::string backend = "mock";
  std::string model = "gpt-oss-120b";
  std::string api_base;
  int max_concurrency = 16;
  int timeout_s = 120;
  std::string sampling_preset = "gpt-oss";
  double flip_probability = 0.0;
  double comparator_accuracy = 1.0;
  std::int64_t max_calls = -1;

  void attach(CLI::App& app) {
    app.add_option("--backend", backend, "Backend kind: http or mock")
        ->check(CLI::IsMember({"http", "mock"}));
    app.add_option("--model", model, "Model name sent to the HTTP backend");
    app.add_option("--api-base", api_base,
                   "OpenAI-compatible base URL (or env PROOFSELECT_API_BASE)");
    app.add_option("--max-concurrency", max_concurrency, "Concurrent requests in flight")
        ->check(CLI::PositiveNumber);
    app.add_option("--timeout-s", timeout_s, "Per-request timeout in seconds");
    app.add_option("--sampling-preset", sampling_preset,
                   "Sampling preset: gpt-oss, qwen, or default");
    app.add_option("--flip-probability", flip_probability,
                   "Mock: chance a judgement flips the true label");
    app.add_option("--comparator-accuracy", comparator_accuracy,
                   "Mock: chance a mixed-pair comparison picks the better proof");
    app.add_option("--max-calls", max_calls, "Abort once this many backend calls were made");
  }

  std::unique_ptr<Backend> make(std::uint64_t seed) const {
    std::unique_ptr<Backend> result;
    if (backend == "mock") {
      result = std::make_unique<MockBackend>(
          MockOracleConfig{flip_probability, comparator_accuracy, seed});
    } else {
      HttpBackendConfig config;
      config.base_url = api_base;
      config.model = model;
      config.timeout_seconds = timeout_s;
      config.max_concurrency = max_concurrency;
      result = std::make_unique<HttpBackend>(std::move(config));
    }
    if (max_calls >= 0) result->set_call_budget(max_calls);
    return result;
  }

  ordered_json snapshot() const {
    return {{"backend", backend},
            {"model", model},
            {"max_concurrency", max_concurrency},
            {"timeout_s", timeout_s},
            {"sampling_preset", sampling_preset},
            {"flip_probability", flip_probability},
            {"comparator_accuracy", comparator_accuracy}};
  }
};

struct PromptFlags {
  std::string prompt;        // template name or file path
  std::string template_dir;  // directory of <name>.txt overrides

  void attach(CLI::App& app) {
    app.add_option("--prompt", prompt,
                   "Judge template: a template name or a path to a .txt body");
    app.add_option("--template-dir", template_dir,
                   "Directory of <template_name>.txt overrides");
  }

  // Resolves the library and the judge template the run should use.
  PromptLibrary make_library() const {
    PromptLibrary library;
    if (!template_dir.empty()) library.load_overrides(template_dir);
    return library;
  }

  TemplateName resolve_judge_template(PromptLibrary& library,
                                      TemplateName fallback = TemplateName::OPC) const {
    if (prompt.empty()) return fallback;
    if (!fs::is_regular_file(prompt)) return template_name_from_string(prompt);
    std::ifstream in(prompt, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    library.override_body(fallback, buffer.str());
    return fallback;
  }
};

void write_manifest(const std::string& out_dir, const std::string& command,
                    ordered_json config_snapshot, std::uint64_t seed,
                    const std::string& started_at, const ComputeLedger& ledger,
                    const std::vector<std::string>& artifacts) {
  ordered_json manifest{{"command", command},
                        {"config_snapshot", std::move(config_snapshot)},
                        {"seed", seed},
                        {"started_at", started_at},
                        {"finished_at", utc_timestamp()},
                        {"ledger_totals",
                         {{"generation_calls", ledger.generation_calls},
                          {"comparison_calls", ledger.comparison_calls},
                          {"judgement_calls", ledger.judgement_calls},
                          {"total_calls", ledger.total_calls}}},
                        {"artifact_paths", artifacts}};
  write_text_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

std::map<std::string, std::vector<Proof>> group_by_problem(const std::vector<Proof>& proofs) {
  std::map<std::string, std::vector<Proof>> grouped;
  for (const auto& proof : proofs) grouped[proof.problem_id].push_back(proof);
  return grouped;
}

// --- subcommand: validate ---------------------------------------------

struct ValidateCmd {
  std::string problems_path;
  std::string proofs_path;
  std::string report_path;

  int run() const {
    const std::string started = utc_timestamp();
    auto problems = read_problems_jsonl(problems_path);
    auto proofs = read_proofs_jsonl(proofs_path);
    auto report = validate_dataset(problems, proofs);
    std::string json = validation_report_json(report);
    std::vector<std::string> artifacts;
    if (!report_path.empty()) {
      write_text_file(report_path, json + "\n");
      artifacts.push_back(report_path);
      write_manifest(fs::path(report_path).parent_path().string(), "validate",
                     {{"problems", problems_path}, {"proofs", proofs_path}}, 0, started,
                     ComputeLedger{}, artifacts);
    }
    std::cout << json << "\n";
    return report.ok() ? 0 : 1;
  }
};

// --- subcommand: run ---------------------------------------------------

struct RunCmd {
  BackendFlags backend_flags;
  PromptFlags prompt_flags;
  std::string method = "hybrid";
  int n_p = 8;
  int n_s = 1;
  int n_j = 0;
  std::uint64_t seed = 0;
  std::string problems_path;
  std::string proofs_path;
  std::string out_path = "results.jsonl";
  bool final_answer_mode = false;

  int run() const {
    auto problems = read_problems_jsonl(problems_path);
    std::map<std::string, std::vector<Proof>> provided;
    if (!proofs_path.empty()) provided = group_by_problem(read_proofs_jsonl(proofs_path));

    PromptLibrary library = prompt_flags.make_library();
    TemplateName judge_template = prompt_flags.resolve_judge_template(library);
    auto backend = backend_flags.make(seed);
    SelectionMethod selection = selection_method_from_string(method);

    JudgeConfig judge_config;
    judge_config.template_name = judge_template;
    judge_config.n_j = std::max(1, n_j);
    GenerationConfig generation;
    generation.profile = SamplingProfile::preset(backend_flags.sampling_preset);
    generation.final_answer_mode =
        final_answer_mode || selection == SelectionMethod::MajorityVote;

    const std::string started = utc_timestamp();
    std::vector<ResultRecord> results;
    std::vector<MatchRecord> matches;
    std::vector<JudgementRecord> judgements;

    for (const auto& problem : problems) {
      std::vector<Proof> candidates;
      if (!provided.empty()) {
        auto it = provided.find(problem.id);
        if (it == provided.end() || it->second.empty())
          throw Error(ErrorCode::InvalidArgument,
                      "no proofs provided for problem " + problem.id);
        candidates = it->second;
      } else {
        generation.n_p = n_p;
        candidates = generate_candidates(*backend, library, problem, generation, seed,
                                         backend_flags.max_concurrency);
      }
      const int count = static_cast<int>(candidates.size());

      SelectionArtifacts artifacts;
      HybridConfig recorded;
      switch (selection) {
        case SelectionMethod::MajorityVote:
          artifacts.outcome = majority_vote_final_answer(candidates, seed);
          recorded = {count, count, 0};
          break;
        case SelectionMethod::Knockout:
          artifacts = select_knockout(*backend, library, problem, candidates, seed,
                                      backend_flags.max_concurrency);
          recorded = {count, 1, 0};
          break;
        case SelectionMethod::Pairwise:
          artifacts = select_pairwise(*backend, library, problem, candidates, seed,
                                      backend_flags.max_concurrency);
          recorded = {count, 1, 0};
          break;
        case SelectionMethod::JudgeOnly:
          artifacts = select_judge_only(*backend, library, problem, candidates, judge_config,
                                        seed, backend_flags.max_concurrency);
          recorded = {count, count, judge_config.n_j};
          break;
        case SelectionMethod::Hybrid: {
          HybridConfig config{count, n_s, n_j};
          artifacts = select_hybrid(*backend, library, problem, candidates, config,
                                    judge_config, seed, backend_flags.max_concurrency);
          recorded = config;
          break;
        }
      }
      results.push_back({std::move(artifacts.outcome), recorded, seed});
      std::move(artifacts.matches.begin(), artifacts.matches.end(),
                std::back_inserter(matches));
      std::move(artifacts.judgements.begin(), artifacts.judgements.end(),
                std::back_inserter(judgements));
    }

    write_results_jsonl(out_path, results);
    std::vector<std::string> artifact_paths{out_path};
    const fs::path out_dir = fs::path(out_path).parent_path();
    auto side_path = [&](const char* name) { return (out_dir / name).string(); };
    if (!matches.empty()) {
      write_matches_jsonl(side_path("matches.jsonl"), matches);
      artifact_paths.push_back(side_path("matches.jsonl"));
    }
    if (!judgements.empty()) {
      write_judgements_jsonl(side_path("judgements.jsonl"), judgements);
      artifact_paths.push_back(side_path("judgements.jsonl"));
    }

    ordered_json snapshot = backend_flags.snapshot();
    snapshot["method"] = method;
    snapshot["n_p"] = n_p;
    snapshot["n_s"] = n_s;
    snapshot["n_j"] = n_j;
    snapshot["problems"] = problems_path;
    snapshot["proofs"] = proofs_path;
    snapshot["final_answer_mode"] = final_answer_mode;
    write_manifest(out_dir.string(), "run", std::move(snapshot), seed, started,
                   backend->ledger_snapshot(), artifact_paths);
    return 0;
  }
};

// --- subcommand: judge -------------------------------------------------

struct JudgeCmd {
  BackendFlags backend_flags;
  PromptFlags prompt_flags;
  int n_j = 5;
  std::string mode = "binary";
  std::uint64_t seed = 0;
  std::string problems_path;
  std::string proofs_path;
  std::string out_path = "judgements.jsonl";

  int run() const {
    auto problems = read_problems_jsonl(problems_path);
    auto proofs = read_proofs_jsonl(proofs_path);
    std::map<std::string, const Problem*> by_id;
    for (const auto& problem : problems) by_id[problem.id] = &problem;

    PromptLibrary library = prompt_flags.make_library();
    JudgeConfig config;
    config.mode = mode == "seven_point" ? JudgeMode::SevenPoint : JudgeMode::Binary;
    config.template_name = prompt_flags.resolve_judge_template(
        library, config.mode == JudgeMode::SevenPoint ? TemplateName::SevenPointGrading
                                                      : TemplateName::OPC);
    config.n_j = n_j;
    auto backend = backend_flags.make(seed);

    const std::string started = utc_timestamp();
    std::vector<JudgementRecord> records;
    for (const auto& proof : proofs) {
      auto it = by_id.find(proof.problem_id);
      if (it == by_id.end())
        throw Error(ErrorCode::InvalidArgument,
                    "proof " + proof.id + " references unknown problem " + proof.problem_id);
      auto samples = sample_judgements(*backend, library, *it->second, proof, config, seed,
                                       backend_flags.max_concurrency);
      for (std::size_t s = 0; s < samples.size(); ++s)
        records.push_back({proof.problem_id, proof.id, static_cast<int>(s), samples[s],
                           config.effective_template(), derive_seed(seed, {proof.id}, {s})});
    }

    write_judgements_jsonl(out_path, records);
    ordered_json snapshot = backend_flags.snapshot();
    snapshot["n_j"] = n_j;
    snapshot["mode"] = mode;
    snapshot["problems"] = problems_path;
    snapshot["proofs"] = proofs_path;
    write_manifest(fs::path(out_path).parent_path().string(), "judge", std::move(snapshot),
                   seed, started, backend->ledger_snapshot(), {out_path});
    return 0;
  }
};

// --- subcommand: tournament ---------------------------------------------

struct TournamentCmd {
  BackendFlags backend_flags;
  PromptFlags prompt_flags;
  std::string mode = "knockout";
  int n_s = 1;
  bool allow_byes = false;
  std::uint64_t seed = 0;
  std::string problems_path;
  std::string proofs_path;
  std::string out_path = "matches.jsonl";

  int run() const {
    auto problems = read_problems_jsonl(problems_path);
    auto grouped = group_by_problem(read_proofs_jsonl(proofs_path));
    PromptLibrary library = prompt_flags.make_library();
    auto backend = backend_flags.make(seed);

    const std::string started = utc_timestamp();
    std::vector<MatchRecord> matches;
    std::vector<ResultRecord> results;
    for (const auto& problem : problems) {
      auto it = grouped.find(problem.id);
      if (it == grouped.end()) continue;
      const auto& candidates = it->second;
      const int count = static_cast<int>(candidates.size());
      if (mode == "pairwise") {
        auto artifacts = select_pairwise(*backend, library, problem, candidates, seed,
                                         backend_flags.max_concurrency);
        results.push_back({std::move(artifacts.outcome), {count, 1, 0}, seed});
        std::move(artifacts.matches.begin(), artifacts.matches.end(),
                  std::back_inserter(matches));
      } else {
        auto knockout = knockout_select(*backend, library, problem, candidates, n_s, seed,
                                        {allow_byes}, backend_flags.max_concurrency);
        SelectionOutcome outcome;
        outcome.problem_id = problem.id;
        outcome.selected_proof_id = knockout.survivors.front().id;
        outcome.method = SelectionMethod::Knockout;
        outcome.ledger =
            ComputeLedger::counts(count, knockout.ledger.comparison_calls, 0);
        results.push_back({std::move(outcome), {count, n_s, 0}, seed});
        std::move(knockout.matches.begin(), knockout.matches.end(),
                  std::back_inserter(matches));
      }
    }

    write_matches_jsonl(out_path, matches);
    const fs::path out_dir = fs::path(out_path).parent_path();
    const std::string results_path = (out_dir / "results.jsonl").string();
    write_results_jsonl(results_path, results);

    ordered_json snapshot = backend_flags.snapshot();
    snapshot["mode"] = mode;
    snapshot["n_s"] = n_s;
    snapshot["problems"] = problems_path;
    snapshot["proofs"] = proofs_path;
    write_manifest(out_dir.string(), "tournament", std::move(snapshot), seed, started,
                   backend->ledger_snapshot(), {out_path, results_path});
    return 0;
  }
};

// --- subcommand: eval ----------------------------------------------------

struct EvalCmd {
  std::string predictions_path;
  std::string labels_path;
  std::string problems_path;
  std::string report_path = "report.json";

  int run() const {
    const std::string started = utc_timestamp();
    auto predictions = read_predictions(predictions_path);
    auto proofs = read_proofs_jsonl(labels_path);

    std::map<std::string, Verdict> labels;
    std::map<std::string, bool> answer_correct;
    bool all_final_answer = !proofs.empty();
    for (const auto& proof : proofs) {
      if (!proof.label) continue;
      if (!predictions.count(proof.id)) continue;
      labels[proof.id] = proof.label->as_verdict();
      if (proof.label->kind == Label::Kind::FinalAnswer)
        answer_correct[proof.id] = proof.label->answer_correct;
      else
        all_final_answer = false;
    }

    auto metrics = score_predictions(predictions, labels);
    ordered_json report = ordered_json::parse(metrics_report_json(metrics));
    ordered_json wrapped{{"metrics", std::move(report)}};
    if (all_final_answer && !answer_correct.empty()) {
      try {
        wrapped["final_answer_precision"] = final_answer_precision(predictions, answer_correct);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoPositivePredictions) throw;
        wrapped["final_answer_precision"] = nullptr;
      }
    }
    if (!problems_path.empty()) {
      auto problems = read_problems_jsonl(problems_path);
      std::vector<Proof> labeled;
      for (auto& proof : proofs)
        if (proof.label) labeled.push_back(proof);
      wrapped["balance"] =
          ordered_json::parse(balance_report_json(balance_audit(problems, labeled)));
    }

    write_text_file(report_path, wrapped.dump(2) + "\n");
    std::cout << wrapped.dump(2) << "\n";
    write_manifest(fs::path(report_path).parent_path().string(), "eval",
                   {{"predictions", predictions_path},
                    {"labels", labels_path},
                    {"problems", problems_path}},
                   0, started, ComputeLedger{}, {report_path});
    return 0;
  }
};

// --- subcommand: audit ---------------------------------------------------

struct AuditCmd {
  std::string problems_path;
  std::string proofs_path;
  std::string report_path = "report.json";
  double margin = 0.25;
  std::int64_t min_count = 10;

  int run() const {
    const std::string started = utc_timestamp();
    auto problems = read_problems_jsonl(problems_path);
    auto proofs = read_proofs_jsonl(proofs_path);
    auto report = balance_audit(problems, proofs, {margin, min_count});
    std::string json = balance_report_json(report);
    write_text_file(report_path, json + "\n");
    std::cout << json << "\n";
    write_manifest(fs::path(report_path).parent_path().string(), "audit",
                   {{"problems", problems_path},
                    {"proofs", proofs_path},
                    {"margin", margin},
                    {"min_count", min_count}},
                   0, started, ComputeLedger{}, {report_path});
    return 0;
  }
};

// --- subcommand: simulate --------------------------------------------------

struct SimulateCmd {
  std::string method = "hybrid";
  int n_p = 128;
  int n_s = 16;
  int n_j = 32;
  std::string grid;  // "np:ns:nj[,np:ns:nj...]" overrides the single config
  int trials = 1000;
  std::uint64_t seed = 0;
  std::string noise_path;
  std::string out_path = "sweep.csv";
  bool unconditioned = false;

  int run() const {
    NoiseModel noise;
    if (!noise_path.empty()) {
      std::ifstream in(noise_path);
      if (!in) throw Error(ErrorCode::IoError, "cannot open noise config: " + noise_path);
      ordered_json j = ordered_json::parse(in);
      if (j.contains("p_correct_candidate")) noise.p_correct_candidate = j["p_correct_candidate"];
      if (j.contains("judge_tpr")) noise.judge_tpr = j["judge_tpr"];
      if (j.contains("judge_fpr")) noise.judge_fpr = j["judge_fpr"];
      if (j.contains("comparator_accuracy")) noise.comparator_accuracy = j["comparator_accuracy"];
      if (j.contains("mixed_pair_only")) noise.mixed_pair_only = j["mixed_pair_only"];
    }

    std::vector<HybridConfig> configs;
    if (grid.empty()) {
      configs.push_back({n_p, n_s, n_j});
    } else {
      std::stringstream stream(grid);
      std::string triple;
      while (std::getline(stream, triple, ',')) {
        HybridConfig config;
        if (std::sscanf(triple.c_str(), "%d:%d:%d", &config.n_p, &config.n_s, &config.n_j) != 3)
          throw Error(ErrorCode::InvalidArgument, "bad grid entry: " + triple);
        configs.push_back(config);
      }
    }

    const std::string started = utc_timestamp();
    auto rows = sweep(selection_method_from_string(method), configs, noise, trials, seed,
                      {!unconditioned});

    std::ostringstream csv;
    csv << "method,n_p,n_s,n_j,accuracy,total_calls\n";
    char buffer[64];
    for (const auto& row : rows) {
      std::snprintf(buffer, sizeof(buffer), "%.6f", row.accuracy);
      csv << to_string(row.method) << ',' << row.config.n_p << ',' << row.config.n_s << ','
          << row.config.n_j << ',' << buffer << ',' << row.total_calls << '\n';
    }
    write_text_file(out_path, csv.str());
    std::cout << csv.str();

    ordered_json snapshot{{"method", method}, {"trials", trials},
                          {"noise", noise_path},  {"grid", grid},
                          {"n_p", n_p},           {"n_s", n_s},
                          {"n_j", n_j},           {"unconditioned", unconditioned}};
    write_manifest(fs::path(out_path).parent_path().string(), "simulate", std::move(snapshot),
                   seed, started, ComputeLedger{}, {out_path});
    return 0;
  }
};

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Proof selection and verification orchestration", "proofselect"};
  app.require_subcommand(1);
  app.set_config("--config");

  ValidateCmd validate_cmd;
  auto* validate = app.add_subcommand("validate", "Check a problems/proofs dataset");
  validate->add_option("--problems", validate_cmd.problems_path, "problems.jsonl")->required();
  validate->add_option("--proofs", validate_cmd.proofs_path, "proofs.jsonl")->required();
  validate->add_option("--report", validate_cmd.report_path, "Write the findings here");

  RunCmd run_cmd;
  auto* run = app.add_subcommand("run", "Run a selection method over problems");
  run_cmd.backend_flags.attach(*run);
  run_cmd.prompt_flags.attach(*run);
  run->add_option("--method", run_cmd.method, "maj | knockout | pairwise | judge | hybrid");
  run->add_option("--np", run_cmd.n_p, "Candidates per problem (when generating)");
  run->add_option("--ns", run_cmd.n_s, "Knockout survivors (hybrid)");
  run->add_option("--nj", run_cmd.n_j, "Judgements per survivor");
  run->add_option("--seed", run_cmd.seed, "Run seed; all randomness derives from it");
  run->add_option("--problems", run_cmd.problems_path, "problems.jsonl")->required();
  run->add_option("--proofs", run_cmd.proofs_path,
                  "proofs.jsonl of existing candidates (skips generation)");
  run->add_option("--out", run_cmd.out_path, "results.jsonl destination");
  run->add_flag("--final-answer-mode", run_cmd.final_answer_mode,
                "Append the boxed-answer instruction when generating");

  JudgeCmd judge_cmd;
  auto* judge = app.add_subcommand("judge", "Sample judgements for every proof");
  judge_cmd.backend_flags.attach(*judge);
  judge_cmd.prompt_flags.attach(*judge);
  judge->add_option("--nj", judge_cmd.n_j, "Judgements per proof");
  judge->add_option("--mode", judge_cmd.mode, "binary | seven_point")
      ->check(CLI::IsMember({"binary", "seven_point"}));
  judge->add_option("--seed", judge_cmd.seed, "Run seed");
  judge->add_option("--problems", judge_cmd.problems_path, "problems.jsonl")->required();
  judge->add_option("--proofs", judge_cmd.proofs_path, "proofs.jsonl")->required();
  judge->add_option("--out", judge_cmd.out_path, "judgements.jsonl destination");

  TournamentCmd tournament_cmd;
  auto* tournament = app.add_subcommand("tournament", "Run GenSelect tournaments");
  tournament_cmd.backend_flags.attach(*tournament);
  tournament_cmd.prompt_flags.attach(*tournament);
  tournament->add_option("--mode", tournament_cmd.mode, "knockout | pairwise")
      ->check(CLI::IsMember({"knockout", "pairwise"}));
  tournament->add_option("--ns", tournament_cmd.n_s, "Knockout survivors");
  tournament->add_flag("--byes", tournament_cmd.allow_byes,
                       "Pad round 1 to a power of two with byes");
  tournament->add_option("--seed", tournament_cmd.seed, "Run seed");
  tournament->add_option("--problems", tournament_cmd.problems_path, "problems.jsonl")
      ->required();
  tournament->add_option("--proofs", tournament_cmd.proofs_path, "proofs.jsonl")->required();
  tournament->add_option("--out", tournament_cmd.out_path, "matches.jsonl destination");

  EvalCmd eval_cmd;
  auto* eval = app.add_subcommand("eval", "Score predictions against labels");
  eval->add_option("--predictions", eval_cmd.predictions_path,
                   "Predictions: judgements.jsonl or {proof_id, verdict} lines")
      ->required();
  eval->add_option("--labels", eval_cmd.labels_path, "proofs.jsonl with labels")->required();
  eval->add_option("--problems", eval_cmd.problems_path,
                   "problems.jsonl (adds a balance audit to the report)");
  eval->add_option("--report", eval_cmd.report_path, "report.json destination");

  AuditCmd audit_cmd;
  auto* audit = app.add_subcommand("audit", "Label-balance audit of a dataset");
  audit->add_option("--problems", audit_cmd.problems_path, "problems.jsonl")->required();
  audit->add_option("--proofs", audit_cmd.proofs_path, "proofs.jsonl")->required();
  audit->add_option("--report", audit_cmd.report_path, "report.json destination");
  audit->add_option("--margin", audit_cmd.margin, "Skew margin before a group is flagged");
  audit->add_option("--min-count", audit_cmd.min_count, "Minimum group size to consider");

  SimulateCmd simulate_cmd;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo accuracy-vs-compute study");
  simulate->add_option("--method", simulate_cmd.method,
                       "maj | knockout | pairwise | judge | hybrid");
  simulate->add_option("--np", simulate_cmd.n_p, "Candidates");
  simulate->add_option("--ns", simulate_cmd.n_s, "Survivors");
  simulate->add_option("--nj", simulate_cmd.n_j, "Judgements per survivor");
  simulate->add_option("--grid", simulate_cmd.grid,
                       "Config sweep as np:ns:nj[,np:ns:nj...] (overrides --np/--ns/--nj)");
  simulate->add_option("--trials", simulate_cmd.trials, "Monte Carlo trials per config");
  simulate->add_option("--seed", simulate_cmd.seed, "Simulation seed");
  simulate->add_option("--noise", simulate_cmd.noise_path, "noise.json parameters");
  simulate->add_option("--out", simulate_cmd.out_path, "sweep.csv destination");
  simulate->add_flag("--unconditioned", simulate_cmd.unconditioned,
                     "Count trials without any correct candidate as failures");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return validate_cmd.run();
    if (run->parsed()) return run_cmd.run();
    if (judge->parsed()) return judge_cmd.run();
    if (tournament->parsed()) return tournament_cmd.run();
    if (eval->parsed()) return eval_cmd.run();
    if (audit->parsed()) return audit_cmd.run();
    if (simulate->parsed()) return simulate_cmd.run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace proofselect
