#include "proofselect/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "proofselect/rng.hpp"
#include "template_text.hpp"

namespace proofselect {

namespace {

constexpr std::size_t kTemplateCount = 9;

const char* template_names[kTemplateCount] = {
    "OPC",         "OPC_Rubric",       "GIMO",
    "GeneralSummary", "SevenPointGrading", "SevenPointBinary",
    "SevenPointRubric", "GenSelect",   "ProofGeneration",
};

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Strict integer: optional '-' then digits, nothing else.
std::optional<long long> parse_strict_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return std::nullopt;
  long long value = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    value = value * 10 + (s[i] - '0');
    if (value > 1'000'000'000LL) return std::nullopt;
  }
  return s[0] == '-' ? -value : value;
}

// All complete <tag>...</tag> contents, non-overlapping, scanned from the
// right so the final element is the last tag in the response.
std::vector<std::string> tag_contents(const std::string& raw, const std::string& tag) {
  const std::string open = "<" + tag + ">";
  const std::string close = "</" + tag + ">";
  std::vector<std::string> found;
  std::size_t limit = raw.size();
  while (true) {
    std::size_t close_pos = raw.rfind(close, limit == 0 ? 0 : limit - 1);
    if (close_pos == std::string::npos || close_pos + close.size() > limit) break;
    std::size_t open_pos = raw.rfind(open, close_pos);
    if (open_pos == std::string::npos) break;
    found.push_back(raw.substr(open_pos + open.size(), close_pos - open_pos - open.size()));
    if (open_pos == 0) break;
    limit = open_pos;
  }
  std::reverse(found.begin(), found.end());
  return found;
}

std::optional<Verdict> parse_judgement_content(std::string_view content) {
  std::string_view body = trim(content);
  constexpr std::string_view prefix = "Judgement:";
  if (body.substr(0, prefix.size()) != prefix) return std::nullopt;
  std::string_view rest = trim(body.substr(prefix.size()));
  if (rest == "Yes") return Verdict::Correct;
  if (rest == "No") return Verdict::Incorrect;
  return std::nullopt;
}

}  // namespace

const char* to_string(TemplateName name) {
  return template_names[static_cast<std::size_t>(name)];
}

TemplateName template_name_from_string(const std::string& name) {
  for (std::size_t i = 0; i < kTemplateCount; ++i)
    if (name == template_names[i]) return static_cast<TemplateName>(i);
  throw Error(ErrorCode::UnknownTemplate, "unknown template name: " + name);
}

const std::vector<std::string>& known_placeholders() {
  static const std::vector<std::string> names = {
      "problem", "proof", "rubric", "ground_truth_proof", "num_participants", "solutions"};
  return names;
}

const std::vector<std::string>& required_placeholders(TemplateName name) {
  static const std::vector<std::string> problem_proof = {"problem", "proof"};
  static const std::vector<std::string> with_rubric = {"problem", "rubric", "proof"};
  static const std::vector<std::string> full_rubric = {"problem", "ground_truth_proof",
                                                       "rubric", "proof"};
  static const std::vector<std::string> genselect = {"num_participants", "solutions"};
  static const std::vector<std::string> generation = {"problem"};
  switch (name) {
    case TemplateName::OPC_Rubric: return with_rubric;
    case TemplateName::SevenPointRubric: return full_rubric;
    case TemplateName::GenSelect: return genselect;
    case TemplateName::ProofGeneration: return generation;
    default: return problem_proof;
  }
}

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> present;
  for (std::size_t pos = 0; pos < body.size(); ++pos) {
    if (body[pos] != '{') continue;
    for (const auto& name : known_placeholders()) {
      if (body.compare(pos + 1, name.size(), name) == 0 &&
          pos + 1 + name.size() < body.size() && body[pos + 1 + name.size()] == '}') {
        if (std::find(present.begin(), present.end(), name) == present.end())
          present.push_back(name);
        pos += name.size() + 1;
        break;
      }
    }
  }
  return present;
}

void PromptTemplate::validate() const {
  auto present = placeholders();
  for (const auto& req : required_placeholders(name)) {
    if (std::find(present.begin(), present.end(), req) == present.end())
      throw Error(ErrorCode::InvalidArgument,
                  std::string("template ") + to_string(name) +
                      " is missing required placeholder {" + req + "}");
  }
}

std::string render(const PromptTemplate& tmpl, const Bindings& bindings,
                   std::vector<std::string>* warnings) {
  std::string out;
  out.reserve(tmpl.body.size());
  std::vector<std::string> used;

  std::size_t pos = 0;
  while (pos < tmpl.body.size()) {
    char c = tmpl.body[pos];
    if (c == '{') {
      bool replaced = false;
      for (const auto& name : known_placeholders()) {
        if (tmpl.body.compare(pos + 1, name.size(), name) == 0 &&
            pos + 1 + name.size() < tmpl.body.size() &&
            tmpl.body[pos + 1 + name.size()] == '}') {
          auto it = bindings.find(name);
          if (it == bindings.end())
            throw Error(ErrorCode::MissingBinding, "missing binding: " + name);
          out += it->second;
          if (std::find(used.begin(), used.end(), name) == used.end())
            used.push_back(name);
          pos += name.size() + 2;
          replaced = true;
          break;
        }
      }
      if (replaced) continue;
    }
    out += c;
    ++pos;
  }

  if (warnings) {
    for (const auto& [key, _] : bindings) {
      if (std::find(used.begin(), used.end(), key) == used.end())
        warnings->push_back("unused binding: " + key);
    }
  }
  return out;
}

ParsedJudgement parse_binary_judgement(const std::string& raw) {
  auto contents = tag_contents(raw, "judgement");
  if (contents.empty()) return ParsedJudgement::failure(parse_reason::kNoTag);
  // Last well-formed tag wins; draft tags earlier in the chain are ignored.
  for (auto it = contents.rbegin(); it != contents.rend(); ++it) {
    if (auto verdict = parse_judgement_content(*it))
      return ParsedJudgement::from_verdict(*verdict);
  }
  return ParsedJudgement::failure(parse_reason::kMalformedTag);
}

ParsedJudgement parse_seven_point(const std::string& raw) {
  auto contents = tag_contents(raw, "score");
  if (contents.empty()) return ParsedJudgement::failure(parse_reason::kNoTag);
  auto value = parse_strict_int(trim(contents.back()));
  if (!value) return ParsedJudgement::failure(parse_reason::kNotInteger);
  if (*value < 0 || *value > 7) return ParsedJudgement::failure(parse_reason::kOutOfRange);
  return ParsedJudgement::from_score(static_cast<int>(*value));
}

ParsedIndex parse_best_solution(const std::string& raw, int num_participants) {
  if (num_participants < 1)
    throw Error(ErrorCode::InvalidArgument, "num_participants must be >= 1");
  auto contents = tag_contents(raw, "best_solution");
  if (contents.empty()) return {std::nullopt, parse_reason::kNoTag};
  auto value = parse_strict_int(trim(contents.back()));
  if (!value) return {std::nullopt, parse_reason::kNotInteger};
  if (*value < 1 || *value > num_participants) return {std::nullopt, parse_reason::kOutOfRange};
  return {static_cast<int>(*value), {}};
}

std::optional<std::string> extract_summary(const std::string& raw) {
  auto contents = tag_contents(raw, "summary");
  if (contents.empty()) return std::nullopt;
  return std::string(trim(contents.back()));
}

std::string solution_header(int index) {
  return "[Solution " + std::to_string(index) + "]";
}

std::string format_solutions_block(const std::string& context,
                                   const std::vector<std::string>& solutions) {
  std::ostringstream out;
  out << "[Problem]\n\n" << context;
  for (std::size_t i = 0; i < solutions.size(); ++i)
    out << "\n\n" << solution_header(static_cast<int>(i) + 1) << "\n\n" << solutions[i];
  return out.str();
}

PromptLibrary::PromptLibrary() {
  templates_ = {
      {TemplateName::OPC, templates::kOpcText},
      {TemplateName::OPC_Rubric, templates::kOpcRubricText},
      {TemplateName::GIMO, templates::kGimoText},
      {TemplateName::GeneralSummary, templates::kGeneralSummaryText},
      {TemplateName::SevenPointGrading, templates::kSevenPointGradingText},
      {TemplateName::SevenPointBinary, templates::kSevenPointBinaryText},
      {TemplateName::SevenPointRubric, templates::kSevenPointRubricText},
      {TemplateName::GenSelect, templates::kGenSelectText},
      {TemplateName::ProofGeneration, templates::kProofGenerationText},
  };
  for (const auto& t : templates_) t.validate();
}

const PromptTemplate& PromptLibrary::get(TemplateName name) const {
  for (const auto& t : templates_)
    if (t.name == name) return t;
  throw Error(ErrorCode::UnknownTemplate, "template not loaded");
}

void PromptLibrary::override_body(TemplateName name, std::string body) {
  for (auto& t : templates_) {
    if (t.name == name) {
      PromptTemplate candidate{name, std::move(body)};
      candidate.validate();
      t = std::move(candidate);
      return;
    }
  }
}

void PromptLibrary::load_overrides(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw Error(ErrorCode::IoError, "template directory not found: " + dir);
  for (std::size_t i = 0; i < kTemplateCount; ++i) {
    fs::path file = fs::path(dir) / (std::string(template_names[i]) + ".txt");
    if (!fs::is_regular_file(file)) continue;
    std::ifstream in(file, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    override_body(static_cast<TemplateName>(i), buffer.str());
  }
}

const PromptLibrary& PromptLibrary::builtin() {
  static const PromptLibrary library;
  return library;
}

std::uint64_t template_checksum(const PromptTemplate& tmpl) {
  return fnv1a64(tmpl.body);
}

}  // namespace proofselect
