#pragma once

#include <string>
#include <vector>

namespace qcorr {

struct CheckResult {
  std::string name;
  bool pass = false;
  double error = 0.0;      // measured defect
  double tolerance = 0.0;  // bound it was checked against
};

// Machine-precision gate identities: the controlled-kernel action on the
// diagonal Werner-spectrum state, the rotated variant under the
// U_c(pi/8, pi/8, gamma) class, and the rank-family image identity.
std::vector<CheckResult> identity_checks();

// Fast subset of the module property suites (zero discord of classical
// states, Bell-state values, chamber membership, coordinate re-extraction,
// Werner closed form, rank-2 discord/concurrence identity).
std::vector<CheckResult> property_checks(std::uint64_t seed = 7);

}  // namespace qcorr
