#include <cstdio>
#include <string>

#include "steinext/verify.hpp"

using namespace steinext;

int main() {
  VerifyOptions opt;
  bool all = true;
  run_acceptance({}, opt, [&](const CriterionResult& r) {
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
    all = all && r.pass;
  });
  return all ? 0 : 1;
}
