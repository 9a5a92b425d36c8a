#pragma once

#include <string>
#include <vector>

namespace hypmag::verify {

// One end-to-end check of the library against its closed-form model.
struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

// Runs the numbered verification suite (all of it, or the listed subset).
// Every check is deterministic: fixed seeds, fixed tolerances.
std::vector<CriterionResult> run_all(const std::vector<int>& only = {});

}  // namespace hypmag::verify
