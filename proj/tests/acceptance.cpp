// One PASS/FAIL line per reproduction criterion, followed by the measured
// values. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>

#include "hu_shadow/claims.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  namespace cl = hu_shadow::claims;
  using Check = cl::ClaimResult (*)();
  const Check checks[] = {
      [] { return cl::alternating_contraction(); }, [] { return cl::index_scaled_expansion(); },
      [] { return cl::parity_power_instability(); }, [] { return cl::sinusoid_expansion(); },
      [] { return cl::telescope_oracle(); },         [] { return cl::product_bound_soundness(); },
      [] { return cl::ratio_characterisation(); },   [] { return cl::double_factorial(); },
      [] { return cl::oracle_cross_check(); }};
  int failed = 0;
  for (auto check : checks) {
    const auto t0 = clock::now();
    const auto r = check();
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), secs);
    std::printf("    %s\n", r.details.dump().c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(checks)) - failed, std::size(checks));
  return failed == 0 ? 0 : 1;
}
