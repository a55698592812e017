#pragma once
#include <functional>
#include <string>
#include <vector>

namespace steinext {

struct VerifyOptions {
  bool extended = true;  // n = 5 for criterion 3, n = 4 for criterion 5
  unsigned seed = 20240611;
  int samples = 100;      // criterion 9, per (n, d_K)
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  long checks = 0;
  long failures = 0;
  std::string detail;  // first failure or a short summary
  double seconds = 0;
};

constexpr int kNumCriteria = 10;

std::string criterion_name(int id);
CriterionResult run_criterion(int id, const VerifyOptions& opt = {});
// Runs the given ids (all if empty) in order; on_done is called after each.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const VerifyOptions& opt = {},
                                            const std::function<void(const CriterionResult&)>& on_done = {});

}  // namespace steinext
