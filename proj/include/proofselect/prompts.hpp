#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proofselect/types.hpp"

namespace proofselect {

enum class TemplateName {
  OPC,
  OPC_Rubric,
  GIMO,
  GeneralSummary,
  SevenPointGrading,
  SevenPointBinary,
  SevenPointRubric,
  GenSelect,
  ProofGeneration,
};

const char* to_string(TemplateName name);
TemplateName template_name_from_string(const std::string& name);

// The recognized placeholder vocabulary. Anything else in braces is left
// verbatim (prompt bodies and proofs are full of LaTeX braces).
const std::vector<std::string>& known_placeholders();

struct PromptTemplate {
  TemplateName name = TemplateName::OPC;
  std::string body;

  // Throws when the body lacks a placeholder its name requires.
  void validate() const;

  // Placeholders actually present in the body, in first-occurrence order.
  std::vector<std::string> placeholders() const;
};

// Placeholders a template name must carry, independent of any body override.
const std::vector<std::string>& required_placeholders(TemplateName name);

using Bindings = std::map<std::string, std::string>;

// Substitute placeholders in a single pass. Binding values are inserted
// verbatim and never rescanned, so a value containing "{proof}" stays
// literal. Throws ErrorCode::MissingBinding when the body references an
// unbound placeholder; extra bindings are reported through `warnings`.
std::string render(const PromptTemplate& tmpl, const Bindings& bindings,
                   std::vector<std::string>* warnings = nullptr);

// Canonical failure reasons used by the tag parsers.
namespace parse_reason {
inline constexpr const char* kNoTag = "no_tag";
inline constexpr const char* kMalformedTag = "malformed_tag";
inline constexpr const char* kOutOfRange = "out_of_range";
inline constexpr const char* kNotInteger = "not_integer";
}  // namespace parse_reason

// Verdict from the last well-formed <judgement>Judgement: Yes|No</judgement>
// tag. Yes/No matching is case-sensitive; whitespace inside the tag is
// tolerated, attribute syntax is not.
ParsedJudgement parse_binary_judgement(const std::string& raw);

// Integer in [0, 7] from the last <score>...</score> tag.
ParsedJudgement parse_seven_point(const std::string& raw);

struct ParsedIndex {
  std::optional<int> index;  // 1-based
  std::string failure_reason;

  bool ok() const { return index.has_value(); }
};

// 1-based index from the last <best_solution>...</best_solution> tag,
// rejected unless it lies in [1, num_participants].
ParsedIndex parse_best_solution(const std::string& raw, int num_participants);

// Extracts the <summary>...</summary> content when present (last tag wins).
std::optional<std::string> extract_summary(const std::string& raw);

// Indexed solutions block consumed by the GenSelect template's {solutions}
// placeholder. `context` carries the problem statement (and, for judgement
// selection, the proof under review).
std::string format_solutions_block(const std::string& context,
                                   const std::vector<std::string>& solutions);

// Header line introducing solution i inside a solutions block.
std::string solution_header(int index);

// Built-in templates plus optional directory overrides (<name>.txt files).
class PromptLibrary {
 public:
  PromptLibrary();

  const PromptTemplate& get(TemplateName name) const;

  // Replaces the body of every template that has a <name>.txt file in `dir`.
  // Unknown file names are ignored; override bodies are validated.
  void load_overrides(const std::string& dir);

  // Replaces one template's body (validated).
  void override_body(TemplateName name, std::string body);

  static const PromptLibrary& builtin();

 private:
  std::vector<PromptTemplate> templates_;
};

// FNV-1a checksum of a template body; unit tests pin the built-ins.
std::uint64_t template_checksum(const PromptTemplate& tmpl);

}  // namespace proofselect
