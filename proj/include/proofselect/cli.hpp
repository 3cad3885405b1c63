#pragma once

#include <string>
#include <vector>

namespace proofselect {

// Entry point behind the proofselect binary. Returns 0 on success, 1 on a
// domain error, 2 on a usage error.
int dispatch(const std::vector<std::string>& args);

}  // namespace proofselect
