#pragma once

#include <string>
#include <vector>

namespace flatq {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// zp-lemma, lcs, conj-gen, abelian-diam
const std::vector<std::string>& verify_suite_names();

/// Runs one battery, or all of them for "all". Throws InvalidArgument for an unknown name.
std::vector<CheckResult> run_verify_suite(const std::string& name);

}  // namespace flatq
