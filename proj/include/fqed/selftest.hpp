#pragma once

#include <string>
#include <vector>

namespace fqed {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant checks over every module, each independent of the others.
/// Fixed seeds; runs well under a second.
std::vector<SelftestResult> run_selftest();

} // namespace fqed
