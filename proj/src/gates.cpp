#include "qcorr/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

Mat4 pauli_pair(int axis) {
  switch (axis) {
    case 0: return tensor(sigma_x(), sigma_x());
    case 1: return tensor(sigma_y(), sigma_y());
    default: return tensor(sigma_z(), sigma_z());
  }
}

// Magic-basis change: columns |00>+|11>, i(|00>-|11>), i(|01>+|10>),
// |01>-|10>, all over sqrt 2. Local unitaries become real orthogonal in this
// basis and the kernel becomes diagonal.
Mat4 magic_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Mat4 m;
  m(0, 0) = r;        m(0, 1) = r * i;
  m(3, 0) = r;        m(3, 1) = -r * i;
  m(1, 2) = r * i;    m(1, 3) = r;
  m(2, 2) = r * i;    m(2, 3) = -r;
  return m;
}

Complex det4(const Mat4& m) {
  // Cofactor expansion over the first row with 3x3 minors.
  auto minor3 = [&m](std::size_t skip_col) {
    std::size_t cols[3];
    std::size_t c = 0;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != skip_col) cols[c++] = j;
    auto e = [&](std::size_t r, std::size_t k) { return m(r + 1, cols[k]); };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  };
  Complex det = 0.0;
  double sign = 1.0;
  for (std::size_t j = 0; j < 4; ++j) {
    det += sign * m(0, j) * minor3(j);
    sign = -sign;
  }
  return det;
}

Mat4 transpose(const Mat4& m) {
  Mat4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(i, j) = m(j, i);
  return out;
}

// Eigenvalues of a complex symmetric unitary matrix. Writing m = A + iB with
// commuting real symmetric A, B, a generic real combination of the two is
// diagonalized instead; its eigenbasis diagonalizes m. Retries with fresh
// coefficients cover unlucky degeneracies; the sequence is fixed so results
// are deterministic.
std::array<Complex, 4> symmetric_unitary_eigenvalues(const Mat4& m) {
  Mat4 re, im;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      re(i, j) = m(i, j).real();
      im(i, j) = m(i, j).imag();
    }

  std::uint64_t stream = 0x5d7c3a1fb2e90481ULL;
  for (int attempt = 0; attempt < 64; ++attempt) {
    double ca = 1.2602066112249388;
    double cb = 0.22317849046722027;
    if (attempt > 0) {
      stream = mix_seed(stream);
      ca = 2.0 * (static_cast<double>(stream >> 11) * 0x1.0p-53) - 1.0;
      stream = mix_seed(stream);
      cb = 2.0 * (static_cast<double>(stream >> 11) * 0x1.0p-53) - 1.0;
    }
    const Mat4 combo = Complex(ca) * re + Complex(cb) * im;
    const auto sys = hermitian_eigen(combo);

    // d = P^T m P should be diagonal; verify before accepting.
    const Mat4 p = sys.eigenvectors;
    const Mat4 d = transpose(p) * m * p;
    double off = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j) off = std::max(off, std::abs(d(i, j)));
    if (off > 1e-9) continue;

    std::array<Complex, 4> eigs;
    for (std::size_t i = 0; i < 4; ++i) {
      Complex v = d(i, i);
      const double mag = std::abs(v);
      eigs[i] = (mag > 0.0) ? v / mag : Complex(1.0);
    }
    return eigs;
  }
  throw std::runtime_error("canonical_coordinates: diagonalization did not converge");
}

double fold_axis(double v) {
  double r = std::fmod(v, kPi / 2.0);
  if (r < 0.0) r += kPi / 2.0;
  return std::min(r, kPi / 2.0 - r);
}

}  // namespace

CartanCoordinates canonicalize(const CartanCoordinates& coords) {
  std::array<double, 3> t = {fold_axis(coords.theta_x), fold_axis(coords.theta_y),
                             fold_axis(coords.theta_z)};
  std::sort(t.begin(), t.end(), std::greater<double>());
  return CartanCoordinates{t[0], t[1], t[2]};
}

Mat4 cartan_kernel(const CartanCoordinates& coords) {
  const double angles[3] = {coords.theta_x, coords.theta_y, coords.theta_z};
  Mat4 u = Mat4::identity();
  for (int axis = 0; axis < 3; ++axis) {
    const Mat4 factor = Complex(std::cos(angles[axis])) * Mat4::identity() +
                        Complex(0.0, -std::sin(angles[axis])) * pauli_pair(axis);
    u = u * factor;
  }
  return u;
}

CartanCoordinates canonical_coordinates(const Mat4& unitary) {
  if (unitarity_defect(unitary) > 1e-8) {
    throw std::invalid_argument("canonical_coordinates: input is not unitary");
  }

  // Remove the global phase, then read the local-unitary invariants off the
  // spectrum of Up^T Up in the magic basis.
  const Complex det = det4(unitary);
  const Complex scale = std::pow(det, -0.25);
  const Mat4 u = scale * unitary;

  static const Mat4 magic = magic_basis();
  static const Mat4 magic_dag = magic_basis().adjoint();
  const Mat4 up = magic_dag * u * magic;
  const Mat4 m2 = transpose(up) * up;

  const auto eigs = symmetric_unitary_eigenvalues(m2);
  std::array<double, 4> half_phase{};
  for (std::size_t k = 0; k < 4; ++k) half_phase[k] = -0.5 * std::arg(eigs[k]);

  // Pair sums with a fixed partner hit each axis exactly once, up to signs
  // and pi/2 shifts that the chamber fold removes.
  CartanCoordinates raw{0.5 * (half_phase[0] + half_phase[3]),
                        0.5 * (half_phase[1] + half_phase[3]),
                        0.5 * (half_phase[2] + half_phase[3])};
  return canonicalize(raw);
}

Mat4 CartanGate::matrix() const {
  Mat4 u = cartan_kernel(coords);
  if (pre_a || pre_b) {
    u = u * tensor(pre_a.value_or(Mat2::identity()), pre_b.value_or(Mat2::identity()));
  }
  if (post_a || post_b) {
    u = tensor(post_a.value_or(Mat2::identity()), post_b.value_or(Mat2::identity())) * u;
  }
  return u;
}

GateInfo named_gate(std::string_view name) {
  Mat4 m;
  if (name == "identity") {
    m = Mat4::identity();
  } else if (name == "cnot") {
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
  } else if (name == "cz") {
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = 1.0;
    m(3, 3) = -1.0;
  } else if (name == "swap") {
    m(0, 0) = 1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 3) = 1.0;
  } else if (name == "sqrt_swap") {
    const Complex half_plus(0.5, 0.5);
    const Complex half_minus(0.5, -0.5);
    m(0, 0) = 1.0;
    m(3, 3) = 1.0;
    m(1, 1) = half_plus;
    m(2, 2) = half_plus;
    m(1, 2) = half_minus;
    m(2, 1) = half_minus;
  } else if (name == "iswap") {
    const Complex i(0.0, 1.0);
    m(0, 0) = 1.0;
    m(3, 3) = 1.0;
    m(1, 2) = i;
    m(2, 1) = i;
  } else {
    throw std::invalid_argument("unknown gate name: " + std::string(name));
  }
  return GateInfo{std::string(name), m, canonical_coordinates(m)};
}

DensityMatrix apply(const Mat4& unitary, const DensityMatrix& rho) {
  return DensityMatrix::trusted(unitary * rho.matrix() * unitary.adjoint());
}

DensityMatrix apply(const CartanGate& gate, const DensityMatrix& rho) {
  return apply(gate.matrix(), rho);
}

}  // namespace qcorr
