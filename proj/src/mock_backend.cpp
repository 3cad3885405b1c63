#include "proofselect/mock_backend.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "proofselect/judge.hpp"
#include "proofselect/prompts.hpp"
#include "proofselect/rng.hpp"

namespace proofselect {

namespace {

std::optional<Verdict> last_marker(std::string_view text) {
  std::size_t correct_pos = text.rfind(mock_markers::kCorrect);
  std::size_t incorrect_pos = text.rfind(mock_markers::kIncorrect);
  if (correct_pos == std::string_view::npos && incorrect_pos == std::string_view::npos)
    return std::nullopt;
  if (correct_pos == std::string_view::npos) return Verdict::Incorrect;
  if (incorrect_pos == std::string_view::npos) return Verdict::Correct;
  return correct_pos > incorrect_pos ? Verdict::Correct : Verdict::Incorrect;
}

std::string binary_response(Verdict verdict) {
  std::ostringstream out;
  bool yes = verdict == Verdict::Correct;
  out << "Mock review of the submitted solution.\n"
      << "<summary>" << (yes ? "The reasoning holds up step by step." : "A flawed step breaks the argument.")
      << "</summary>\n"
      << "<judgement>Judgement: " << (yes ? "Yes" : "No") << "</judgement>";
  return out.str();
}

std::string score_response(int score) {
  std::ostringstream out;
  out << "<score>" << score << "</score>\n"
      << "<assessment>Mock assessment at score " << score << ".</assessment>\n"
      << "<errors>" << (score == 7 ? "" : "\n  1. mock-identified issue\n") << "</errors>";
  return out.str();
}

std::string selection_response(int index) {
  std::ostringstream out;
  out << "<analysis>Mock comparison of the candidate solutions.</analysis>\n"
      << "<best_solution>" << index << "</best_solution>";
  return out.str();
}

// Per-solution segments of a GenSelect solutions block, plus the context
// preceding [Solution 1].
struct SolutionsView {
  std::string_view context;
  std::vector<std::string_view> solutions;
};

SolutionsView split_solutions(std::string_view prompt) {
  SolutionsView view;
  std::size_t first = prompt.find(solution_header(1));
  if (first == std::string_view::npos) {
    view.context = prompt;
    return view;
  }
  view.context = prompt.substr(0, first);
  std::size_t begin = first;
  for (int i = 1;; ++i) {
    std::string header = solution_header(i);
    std::size_t body_start = begin + header.size();
    std::size_t next = prompt.find(solution_header(i + 1), body_start);
    if (next == std::string_view::npos) {
      view.solutions.push_back(prompt.substr(body_start));
      break;
    }
    view.solutions.push_back(prompt.substr(body_start, next - body_start));
    begin = next;
  }
  return view;
}

// Splits after every blank line; falls back to sentence breaks, then to the
// whole text. Segments concatenate back to the original bytes.
std::vector<std::string_view> segment_proof(std::string_view text) {
  std::vector<std::string_view> parts;
  auto split_on = [&](std::string_view sep) {
    parts.clear();
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t pos = text.find(sep, start);
      if (pos == std::string_view::npos) {
        parts.push_back(text.substr(start));
        return;
      }
      parts.push_back(text.substr(start, pos + sep.size() - start));
      start = pos + sep.size();
    }
  };
  split_on("\n\n");
  if (parts.size() > 1) return parts;
  split_on(". ");
  if (parts.size() > 1) return parts;
  return {text};
}

}  // namespace

std::string MockBackend::do_complete(const CompletionRequest& request) {
  const std::string& prompt = request.prompt;
  Rng rng(derive_seed(config_.seed, {prompt}, {request.seed}));

  auto flip = [&](Verdict v) {
    if (!rng.bernoulli(config_.flip_probability)) return v;
    return v == Verdict::Correct ? Verdict::Incorrect : Verdict::Correct;
  };

  // Step decomposition: return the proof verbatim with separators inserted.
  if (prompt.find(step_format::kBreakToken) != std::string::npos) {
    auto open = prompt.rfind(step_format::kProofOpen);
    auto close = prompt.rfind(step_format::kProofClose);
    std::string proof;
    if (open != std::string::npos && close != std::string::npos && close > open) {
      open += std::string_view(step_format::kProofOpen).size();
      proof = prompt.substr(open, close - open);
      if (!proof.empty() && proof.front() == '\n') proof.erase(proof.begin());
      if (!proof.empty() && proof.back() == '\n') proof.pop_back();
    }
    auto segments = segment_proof(proof);
    std::ostringstream out;
    out << "The proof splits into " << segments.size() << " steps.\n"
        << step_format::kDecompositionOpen;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (i > 0) out << step_format::kBreakToken;
      out << segments[i];
    }
    out << step_format::kDecompositionClose;
    return out.str();
  }

  // Step judgement: an incorrect proof carries its flaw in the final step.
  if (prompt.find(step_format::kStepOpen) != std::string::npos) {
    auto open = prompt.rfind(step_format::kProofOpen);
    auto close = prompt.rfind(step_format::kProofClose);
    Verdict step_truth = Verdict::Correct;
    if (open != std::string::npos && close != std::string::npos && close > open) {
      std::string_view body(prompt.data() + open, close - open);
      auto truth = last_marker(body);
      std::size_t step_close = body.rfind(step_format::kStepClose);
      bool step_is_last = true;
      if (step_close != std::string_view::npos) {
        std::string_view tail = body.substr(step_close + std::string_view(step_format::kStepClose).size());
        step_is_last = tail.find_first_not_of(" \t\r\n") == std::string_view::npos;
      }
      if (truth == Verdict::Incorrect && step_is_last) step_truth = Verdict::Incorrect;
    }
    return binary_response(flip(step_truth));
  }

  // GenSelect: prefer solutions whose label (or embedded verdict) is right.
  if (prompt.find("<best_solution>") != std::string::npos) {
    auto view = split_solutions(prompt);
    int n = static_cast<int>(view.solutions.size());
    if (n == 0) return selection_response(1);

    std::vector<int> preferred;
    std::vector<int> rest;
    auto context_truth = last_marker(view.context);
    for (int i = 0; i < n; ++i) {
      std::optional<Verdict> quality;
      if (auto label = last_marker(view.solutions[i])) {
        quality = *label;
      } else if (context_truth) {
        // Judgement selection: a good judgement matches the proof's label.
        auto parsed = parse_binary_judgement(std::string(view.solutions[i]));
        if (parsed.ok())
          quality = parsed.verdict == *context_truth ? Verdict::Correct : Verdict::Incorrect;
      }
      if (quality && *quality == Verdict::Correct)
        preferred.push_back(i + 1);
      else
        rest.push_back(i + 1);
    }

    int choice;
    if (preferred.empty() || rest.empty()) {
      choice = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))) + 1;
    } else if (rng.bernoulli(config_.comparator_accuracy)) {
      choice = preferred[rng.below(preferred.size())];
    } else {
      choice = rest[rng.below(rest.size())];
    }
    return selection_response(choice);
  }

  // Seven-point grading.
  if (prompt.find("<score>") != std::string::npos) {
    Verdict truth = last_marker(prompt).value_or(rng.bernoulli(0.5) ? Verdict::Correct
                                                                    : Verdict::Incorrect);
    Verdict graded = flip(truth);
    int score = graded == Verdict::Correct ? 6 + static_cast<int>(rng.below(2))
                                           : static_cast<int>(rng.below(6));
    return score_response(score);
  }

  // Binary judgement.
  if (prompt.find("<judgement>") != std::string::npos) {
    Verdict truth = last_marker(prompt).value_or(rng.bernoulli(0.5) ? Verdict::Correct
                                                                    : Verdict::Incorrect);
    return binary_response(flip(truth));
  }

  // Proof generation: half the candidates are correct and box the canonical
  // answer, the rest box a wrong one.
  bool correct = rng.bernoulli(0.5);
  std::ostringstream out;
  out << mock_markers::for_label(correct ? Verdict::Correct : Verdict::Incorrect) << "\n"
      << "Mock proof attempt " << request.seed << ".\n"
      << "We restate the problem, derive the key identity, and conclude.\n";
  if (correct) {
    out << "Each transformation above is justified.\n\\boxed{42}";
  } else {
    static const char* wrong[] = {"41", "43", "7", "100"};
    out << "One transformation silently divides by zero.\n\\boxed{" << wrong[rng.below(4)] << "}";
  }
  return out.str();
}

}  // namespace proofselect
