#pragma once

#include <vector>

namespace qcorr_tests {

// 40-point purity grid for boundary reproduction. Two stretches of the curve
// are steep and get graded spacing: the low-purity branch climbs with a
// logarithmic slope toward mu = 1/3 (a spectral weight goes to zero there),
// and the rank-2 edge enters with a square-root slope at mu = 1/2.
inline std::vector<double> boundary_grid_40() {
  return {
      0.25,   0.27,   0.28,   0.29,   0.30,   0.31,   0.318,  0.324,
      0.328,  0.3307, 0.3322, 1.0 / 3.0,
      0.359,  0.4103, 0.4359, 0.4615, 0.4872,
      0.50,   0.505,  0.5128, 0.526,
      0.5385, 0.5641, 0.5897, 0.6154, 0.641,  0.6667, 0.6923, 0.7179,
      0.7436, 0.7692, 0.7949, 0.8205, 0.8462, 0.8718, 0.8974, 0.9231,
      0.9487, 0.9744, 1.0,
  };
}

}  // namespace qcorr_tests
