#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qcorr/matrix.hpp"
#include "qcorr/states.hpp"

// Two-qubit gates: the nonlocal kernel
//   U_c(t) = exp(-i sum_j t_j sigma_j (x) sigma_j)
// in exact closed form, canonical-coordinate extraction for arbitrary
// unitaries, and a small named-gate catalog.
namespace qcorr {

struct CartanCoordinates {
  double theta_x = 0.0;
  double theta_y = 0.0;
  double theta_z = 0.0;
};

// Folds arbitrary angles into the canonical chamber
// 0 <= theta_z <= theta_y <= theta_x <= pi/4 using the kernel symmetries:
// period pi/2 per axis, reflection about pi/4, axis relabeling.
CartanCoordinates canonicalize(const CartanCoordinates& coords);

// Exact product of the three commuting factor exponentials,
// cos(t_j) I - i sin(t_j) sigma_j (x) sigma_j.
Mat4 cartan_kernel(const CartanCoordinates& coords);

// Canonical coordinates of an arbitrary two-qubit unitary. Gates equal up to
// local unitaries map to identical coordinates; throws if the input deviates
// from unitarity by more than 1e-8. Only the coordinates are contractual
// output; local factors are not computed.
CartanCoordinates canonical_coordinates(const Mat4& unitary);

struct CartanGate {
  CartanCoordinates coords;
  std::optional<Mat2> pre_a, pre_b;    // applied before the kernel
  std::optional<Mat2> post_a, post_b;  // applied after the kernel

  Mat4 matrix() const;
};

struct GateInfo {
  std::string name;
  Mat4 matrix;
  CartanCoordinates coords;
};

// Known names: identity, cnot, swap, sqrt_swap, cz, iswap. Throws otherwise.
GateInfo named_gate(std::string_view name);

DensityMatrix apply(const Mat4& unitary, const DensityMatrix& rho);
DensityMatrix apply(const CartanGate& gate, const DensityMatrix& rho);

}  // namespace qcorr
