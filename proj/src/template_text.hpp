#pragma once

namespace proofselect::templates {

extern const char* const kProofGenerationText;
extern const char* const kOpcText;
extern const char* const kOpcRubricText;
extern const char* const kGeneralSummaryText;
extern const char* const kGimoText;
extern const char* const kGenSelectText;
extern const char* const kSevenPointGradingText;
extern const char* const kSevenPointBinaryText;
extern const char* const kSevenPointRubricText;

}  // namespace proofselect::templates
