#include "template_text.hpp"

namespace proofselect::templates {

const char* const kProofGenerationText = R"__T(Your task is to write a proof solution to the following problem. Your proof will be graded by human judges for accuracy, thoroughness, and clarity. When you write your proof, follow these guidelines:

- You are creating a proof, not a proof outline. Each step should be carefully explained and documented. If not properly explained, the judge will assume that you cannot explain it, and therefore decrease your grade.
- You can use general theorems and lemmas, but only if they are well-known. As a rule of thumb: if the result has a name and is famous enough to have a Wikipedia page or something similar to describe it, it is allowed. Any result from papers that would not be taught in high-school or low-level bachelor courses in mathematics should not be used. Any use of such results will immediately give you a zero grade.
- Do not skip computation steps in your proof. Clearly explain what transformations were done and why they are allowed in each step of a calculation.
- You should use correct LaTeX notation to write equations and mathematical symbols. You should encompass these equations in appropriate symbols ("\(" and "\)" for inline math, "\[" and "\]" for block math) to enhance the clarity of your proof. Do not use any unicode characters.
- Your proof should be self-contained.
- If you are not sure about a specific step, or do not know how to prove an intermediate result, clearly state this. It is much preferable to indicate your uncertainty rather than making incorrect statements or claims.

{problem}
)__T";

const char* const kOpcText = R"__T(You are judging the correctness of an LLM-generated proof for a math problem.

### Input:

Your input will consist of the following components:
- **Problem Statement**: A mathematical problem that the proof is attempting to solve.
- **Proof Solution**: The proof that you need to evaluate. This proof may contain errors, omissions, or unclear steps. The proof was generated by another language model, which was given the following instructions:
<model_prompt>
- You are creating a proof, not a proof outline. Each step should be carefully explained and documented. If not properly explained, the judge will assume that you cannot explain it, and therefore decrease your grade.
- You can use general theorems and lemmas, but only if they are well-known. As a rule of thumb: if the result has a name and is famous enough to have a Wikipedia page or something similar to describe it, it is allowed. Any result from papers that would not be taught in high school or low-level bachelor courses in mathematics should not be used. Any use of such results will immediately give you a zero grade.
- Do not skip computation steps in your proof. Clearly explain what transformations were done and why they are allowed in each step of a calculation.
- You should use correct LaTeX notation to write equations and mathematical symbols. You should encompass these equations in appropriate symbols ("\\(" and "\\)" for inline math, "\\[" and "\\]" for block math) to enhance the clarity of your proof. Do not use any unicode characters.
- Your proof should be self-contained.
- If you are not sure about a specific step, or do not know how to prove an intermediate result, clearly state this. It is much preferable to indicate your uncertainty rather than making incorrect statements or claims.
</model_prompt>

### How the solution should be graded:
A solution should be considered correct even if it would earn 5+/7 points in a standard grading format. Examples of small penalties worth 1 point are if the solution:
- Makes a small computational mistake that can be easily fixed
- Misses an edge case which can be easily proven/disproven
- Skips over a step that follows without much reasoning or manual work
Depending on the severity and the context, you may also not penalise a given error. On the other hand, a solution should be marked as incorrect if:
- It marks a step as trivial, if it is not immediately obvious with little reasoning why this would be the case.
- It omits algebra-heavy computational steps, regardless of whether or not it has outlined the methodology. Skipping shorter computations should be permitted.
- Generalizes over a pattern without rigorously describing the pattern, or without proving any relevant properties.
- It cites a non-existing or unpopular source/Theorem, which cannot be immediately found from searching for it online. Thus, any theorems that can be immediately found and have a Wikipedia article are allowed.

The model has been specifically told that it should not skip steps or mark them as trivial. Any violation of this rule should be considered by assuming the model does not know how to derive the "trivial" step.

### Scoring instructions

If you believe the proof is correct, end your analysis with the following two tags:
<summary>One-paragraph summary explaining why the proof is correct</summary>
<judgement>Judgement: Yes</judgement>.

If you believe the proof is incorrect, end your analysis with the following two tags:
<summary>One-paragraph summary explaining why the proof is incorrect</summary>
<judgement>Judgement: No</judgement>.

### Problem Statement:
{problem}

### Model Solution:
{proof}
)__T";

const char* const kOpcRubricText = R"__T(You are judging the correctness of an LLM-generated proof for a math problem.

### Input:

Your input will consist of the following components:
- **Problem Statement**: A mathematical problem that the proof is attempting to solve.
- **Proof Solution**: The proof that you need to evaluate. This proof may contain errors, omissions, or unclear steps. The proof was generated by another language model, which was given the following instructions:
<model_prompt>
- You are creating a proof, not a proof outline. Each step should be carefully explained and documented. If not properly explained, the judge will assume that you cannot explain it, and therefore decrease your grade.
- You can use general theorems and lemmas, but only if they are well-known. As a rule of thumb: if the result has a name and is famous enough to have a Wikipedia page or something similar to describe it, it is allowed. Any result from papers that would not be taught in high school or low-level bachelor courses in mathematics should not be used. Any use of such results will immediately give you a zero grade.
- Do not skip computation steps in your proof. Clearly explain what transformations were done and why they are allowed in each step of a calculation.
- You should use correct LaTeX notation to write equations and mathematical symbols. You should encompass these equations in appropriate symbols ("\\(" and "\\)" for inline math, "\\[" and "\\]" for block math) to enhance the clarity of your proof. Do not use any unicode characters.
- Your proof should be self-contained.
- If you are not sure about a specific step, or do not know how to prove an intermediate result, clearly state this. It is much preferable to indicate your uncertainty rather than making incorrect statements or claims.
</model_prompt>

### How the solution should be graded:
A solution should be considered correct even if it would earn 5+/7 points in a standard grading format. Examples of small penalties worth 1 point are if the solution:
- Makes a small computational mistake that can be easily fixed
- Misses an edge case which can be easily proven/disproven
- Skips over a step that follows without much reasoning or manual work
Depending on the severity and the context, you may also not penalise a given error. On the other hand, a solution should be marked as incorrect if:
- It marks a step as trivial, if it is not immediately obvious with little reasoning why this would be the case.
- It omits algebra-heavy computational steps, regardless of whether or not it has outlined the methodology. Skipping shorter computations should be permitted.
- Generalizes over a pattern without rigorously describing the pattern, or without proving any relevant properties.
- It cites a non-existing or unpopular source/Theorem, which cannot be immediately found from searching for it online. Thus, any theorems that can be immediately found and have a Wikipedia article are allowed.

The model has been specifically told that it should not skip steps or mark them as trivial. Any violation of this rule should be considered by assuming the model does not know how to derive the "trivial" step.

### Scoring instructions

If you believe the proof is correct, end your analysis with the following two tags:
<summary>One-paragraph summary explaining why the proof is correct</summary>
<judgement>Judgement: Yes</judgement>.

If you believe the proof is incorrect, end your analysis with the following two tags:
<summary>One-paragraph summary explaining why the proof is incorrect</summary>
<judgement>Judgement: No</judgement>.

### Problem Statement:
{problem}

### Rubric:
{rubric}

### Model Solution:
{proof}
)__T";

const char* const kGeneralSummaryText = R"__T([Instructions]

I will provide a math problem along with a solution. Your task is to review each step of the solution in sequence, analyzing, verifying, and critiquing the reasoning in detail. You need to provide the analyses and the conclusion in the following format:

* When you analyze each step, you should use proper verification, recalculation, or reflection to indicate whether it is logically and mathematically valid. Please elaborate on the analysis process carefully.
* If an error is detected in any step, you should describe the nature and cause of the error in detail, and suggest how to correct the error or the correct approach. Once a step is found to contain any error, stop further analysis of subsequent steps and provide your judgement.
* If no error is detected in any step, you should provide your judgement.

[Format]

After your analysis and conclusion, your response MUST follow this exact format:

For correct solutions, you must end your response with:
<summary>One-paragraph summary explaining why the solution is correct</summary>
<judgement>Judgement: Yes</judgement>

For incorrect solutions, you must end your response with:
<summary>One-paragraph summary explaining why the solution is incorrect</summary>
<judgement>Judgement: No</judgement>

[Problem]

{problem}

[Solution]

{proof}
)__T";

const char* const kGimoText = R"__T(You are an expert mathematician and a meticulous grader for an International Mathematical Olympiad (IMO) level exam. Your primary task is to rigorously verify the provided mathematical solution. A solution is to be judged correct **only if every step is rigorously justified.** A solution that arrives at a correct final answer through flawed reasoning, educated guesses, or with gaps in its arguments must be flagged as incorrect or incomplete.

### Instructions ###

**1. Core Instructions**
*   Your sole task is to find and report all issues in the provided solution. You must act as a **verifier**, NOT a solver. **Do NOT attempt to correct the errors or fill the gaps you find.**
*   You must perform a **step-by-step** check of the entire solution. This analysis will be presented in a **Detailed Verification Log**, where you justify your assessment of each step: for correct steps, a brief justification suffices; for steps with errors or gaps, you must provide a detailed explanation.

**2. How to Handle Issues in the Solution**
When you identify an issue in a step, you MUST first classify it into one of the following two categories and then follow the specified procedure.

*   **a. Critical Error:**
  This is any error that breaks the logical chain of the proof. This includes both **logical fallacies** (e.g., claiming that `A>B, C>D` implies `A-C>B-D`) and **factual errors** (e.g., a calculation error like `2+3=6`).
  *   **Procedure:**
      *   Explain the specific error and state that it **invalidates the current line of reasoning**.
      *   Do NOT check any further steps that rely on this error.
      *   You MUST, however, scan the rest of the solution to identify and verify any fully independent parts. For example, if a proof is split into multiple cases, an error in one case does not prevent you from checking the other cases.

*   **b. Justification Gap:**
  This is for steps where the conclusion may be correct, but the provided argument is incomplete, hand-wavy, or lacks sufficient rigor.
  *   **Procedure:**
      *   Explain the gap in the justification.
      *   State that you will **assume the step's conclusion is true** for the sake of argument.
      *   Then, proceed to verify all subsequent steps to check if the remainder of the argument is sound.

**3. Output Format**
Your response MUST be structured into three XML sections with the tags: <summary>, <detailed_verification>, and <judgement>.

*   **a. Summary**
  Wrap this section within <summary>...</summary> tags.
  This section MUST be at the very beginning of your response. It must contain two components:
  *   **Final Verdict**: A single, clear sentence declaring the overall validity of the solution. For example: "The solution is correct," "The solution contains a Critical Error and is therefore invalid," or "The solution's approach is viable but contains several Justification Gaps."
  *   **List of Findings**: A bulleted list that summarizes **every** issue you discovered. For each finding, you must provide:
      *   **Location:** A direct quote of the key phrase or equation where the issue occurs.
      *   **Issue:** A brief description of the problem and its classification (**Critical Error** or **Justification Gap**).

*   **b. Detailed Verification Log**
  Wrap this section within <detailed_verification>...</detailed_verification> tags.
  Following the summary, provide the full, step-by-step verification log as defined in the Core Instructions. When you refer to a specific part of the solution, **quote the relevant text** to make your reference clear before providing your detailed analysis of that part.

*   **c. Judgement**
  This section MUST be at the very end of your response. For correct solutions, you must end your response with EXACTLY:
  <judgement>Judgement: Yes</judgement>
  For incorrect solutions, you must end your response with EXACTLY:
  <judgement>Judgement: No</judgement>

**Example of the Required Summary Format**
*This is a generic example to illustrate the required format. Your findings must be based on the actual solution provided below.*

<summary>
**Final Verdict:** The solution is **invalid** because it contains a Critical Error.

**List of Findings:**
*   **Location:** "By interchanging the limit and the integral, we get..."
  *   **Issue:** Justification Gap - The solution interchanges a limit and an integral without providing justification, such as proving uniform convergence.
*   **Location:** "From $A > B$ and $C > D$, it follows that $A-C > B-D$"
  *   **Issue:** Critical Error - This step is a logical fallacy. Subtracting inequalities in this manner is not a valid mathematical operation.
</summary>

======================================================================
### Problem ###

{problem}

======================================================================
### Solution ###

{proof}

======================================================================
### Verification Task Reminder ###

Your task is to act as an IMO grader. Now, generate the <summary>, the <detailed_verification>, and the <judgement> for the solution above. In your log, justify each correct step and explain in detail any errors or justification gaps you find, as specified in the instructions above. End your response with the required XML tags.
)__T";

const char* const kGenSelectText = R"__T([Instructions]
You are a senior mathematician. You are given a math problem and a list of {num_participants} candidate solutions written by different students.
Your task as a senior mathematician is to carefully analyze the solutions and pick the best solution from the list.

[Format]
Your output must end with the following tags:
<analysis>One-paragraph summary of your analysis of the solutions</analysis>
<best_solution>Index</best_solution>

The best_solution tag MUST ONLY contain an integer between 1 and {num_participants} (inclusive).

{solutions}
)__T";

const char* const kSevenPointGradingText = R"__T(You are an **expert math proof grader**. You are judging the
correctness of an LLM-generated proof for a math problem.

### Input

Your input will consist of:

* **Problem Statement**: A mathematical problem that the proof is
attempting to solve.
* **Proof Solution**: The proof that you need to evaluate. This
proof may contain errors, omissions, or unclear steps. The proof
was generated by another language model.

### Task

Analyze the proof carefully.

* Identify logical errors, incorrect steps, or unclear reasoning.
* Give an **integer** score between 0 and 7 with a brief overall
assessment.

### Output Format

Respond with **only** well-formed XML using the structure below.
Do not include any extra text or Markdown.

**Requirements:**
- `<score>` must be an integer in [0, 7].
- `<assessment>` must be a **detailed analysis** that explains your
reasoning step-by-step and provides a clear **rationale for the
score**. Reference specific claims/lines if present.
- `<errors>` must be a list of specific issues (empty if score = 7).

Example output:

<score>0</score>
<assessment>The proof shows a good understanding of the main idea,
but has some unclear reasoning and minor mistakes...</assessment>
<errors>
  1. specific error 1,
  2. specific error 2,
  ...
</errors>

### Scoring Guidelines (0-7 scale)

* **0**: Completely incorrect; proof is irrelevant, nonsensical, or
shows no understanding.
* **1-2**: Very poor; major logical flaws, does not solve the problem,
but may contain fragments of relevant reasoning.
* **3-4**: Partial progress; captures some correct reasoning or key
ideas, but has significant logical errors, missing steps, or
incomplete arguments that make the proof invalid overall.
* **5-6**: Largely correct; the proof is overall valid and reaches
the correct conclusion. Contains only **minor issues** (e.g., small
calculation mistakes, notation slips, or slightly unclear wording)
that do not undermine correctness.
* **7**: Fully correct; the proof is complete, logically sound, and
clearly presented with no substantive errors.

----------------------------------------------------------
**Problem Statement**
{problem}

**Proof Solution**
{proof}
)__T";

const char* const kSevenPointBinaryText = R"__T(You are an **expert math proof grader**. You are judging the
correctness of an LLM-generated proof for a math problem.

### Input

Your input will consist of:

* **Problem Statement**: A mathematical problem that the proof is
attempting to solve.
* **Proof Solution**: The proof that you need to evaluate. This
proof may contain errors, omissions, or unclear steps. The proof
was generated by another language model.

### Task

Analyze the proof carefully and determine if it is correct or incorrect.

* Identify logical errors, incorrect steps, or unclear reasoning.
* Evaluate the proof using the scoring guidelines below to decide if
it should be considered correct (score 6-7) or incorrect (score 0-5).

### Output Format

If you believe the proof is correct (would score 6 or 7), end your analysis with:
<summary>One-paragraph summary explaining why the proof is correct</summary>
<judgement>Judgement: Yes</judgement>

If you believe the proof is incorrect (would score 0-5), end your analysis with:
<summary>One-paragraph summary explaining why the proof is incorrect</summary>
<judgement>Judgement: No</judgement>

### Scoring Guidelines (0-7 scale)

* **0**: Completely incorrect; proof is irrelevant, nonsensical, or
shows no understanding.
* **1-2**: Very poor; major logical flaws, does not solve the problem,
but may contain fragments of relevant reasoning.
* **3-4**: Partial progress; captures some correct reasoning or key
ideas, but has significant logical errors, missing steps, or
incomplete arguments that make the proof invalid overall.
* **5-6**: Largely correct; the proof is overall valid and reaches
the correct conclusion. Contains only **minor issues** (e.g., small
calculation mistakes, notation slips, or slightly unclear wording)
that do not undermine correctness.
* **7**: Fully correct; the proof is complete, logically sound, and
clearly presented with no substantive errors.

----------------------------------------------------------
**Problem Statement**
{problem}

**Proof Solution**
{proof}
)__T";

const char* const kSevenPointRubricText = R"__T(You are an **expert math proof grader**. You are judging the
correctness of an LLM-generated proof for a math problem.

### Input

Your input will consist of:

* **Problem Statement**: A mathematical problem that the proof
is attempting to solve.
* **Reference Solution**: A correct solution or proof provided
for reference. This is **not necessarily the only valid solution**.
If the problem requires a final numeric or algebraic answer, this
section contains the correct answer, which should be the only
accepted final answer (though alternative reasoning paths are valid).
* **Marking Scheme**: A problem-specific grading rubric (0-7 scale)
with checkpoints, zero-credit items, and deductions. **Treat this
scheme as advisory guidance, not a script.** Use it to anchor
scoring, but **do not require** the proof to follow the same
order, lemmas, or technique if its reasoning is mathematically
sound.
* **Proof Solution**: The proof that you need to evaluate. This
proof may contain errors, omissions, or unclear steps. The proof
was generated by another language model.

### Task

Analyze the proof carefully.

**Core principles (in order of precedence):**
1) **Mathematical validity** of the proof's reasoning and conclusion.
2) **Problem constraints** (e.g., unique required final value;
forbidden tools if stated).
3) **Advisory mapping to the marking scheme** (checkpoints/
deductions), allowing different orders and techniques.
4) **Reference solution** as an anchor for sufficiency, not
exclusivity.

**Alternative-approach policy:**
- If the proof uses a different but valid method, **map its
steps to equivalent rubric checkpoints** (same logical role)
and award points accordingly.
- **Do not penalize** solely for re-ordering steps, using
different lemmas, or giving a correct shortcut, **unless**
the problem forbids it.
- Apply zero-credit items/deductions **only when the underlying
issue actually occurs** in the given proof's approach; **do not
auto-penalize** for omitting a rubric step that is unnecessary
under the alternative method.
- Avoid double-counting mutually exclusive items; if two items
solve the same logical gap, **award the larger only**.
- If the final numeric/algebraic answer is wrong where uniqueness
is required, award only partial credit justified by correct
intermediate reasoning.

**Rigor and evidence:**
- Award credit for intermediate claims **only if adequately
justified** within the proof (not merely asserted).
- If a step is plausible but under-justified, award **conservative
partial credit** and note what is missing.

**What to produce:**
- Identify logical errors, incorrect steps, or unclear reasoning.
- Give a **score between 0 and 7** with a **detailed assessment**.
- **Within the assessment text**, show clearly how the score was
derived:
  - Which rubric checkpoints (or their **mapped equivalents**)
  were earned and the points you awarded.
  - Any zero-credit items or deductions you applied (and why).
  - How these add up to the final integer score in [0-7].

### Output Format

Respond with **only** well-formed XML using the structure below.
Do not include any extra text or Markdown.

**Requirements:**
- `<score>` must be an integer in [0, 7].
- `<assessment>` must be a **detailed analysis** that explains
your reasoning step-by-step and provides a clear **rationale for
the score**. Reference specific claims/lines if present. Include
the scoring breakdown **in prose** here (earned checkpoints or
mapped equivalents, deductions, and subtotal -> final score).
- `<errors>` must be a list of specific issues (empty if score = 7).

Example output:

<score>0</score>
<assessment>The proof shows a good understanding of the main idea,
but has some unclear reasoning and minor mistakes...</assessment>
<errors>
  1. specific error 1,
  2. specific error 2,
  ...
</errors>

----------------------------------------------------------
**Problem Statement**
{problem}

**Reference Solution**
{ground_truth_proof}

**Marking Scheme**
{rubric}

**Proof Solution**
{proof}
)__T";

}  // namespace proofselect::templates
