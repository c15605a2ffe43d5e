#include "qcorr/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

double entropy_from_clipped(const std::array<double, 4>& lam, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += lam[i];
  if (total <= 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = lam[i] / total;
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

}  // namespace

DensityMatrix DensityMatrix::make(const Mat4& m) {
  if (hermiticity_defect(m) > kHermiticityTol) {
    throw std::invalid_argument("density matrix is not Hermitian within tolerance");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0)) > kHermiticityTol) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  const auto sys = hermitian_eigen(m);
  for (double lambda : sys.eigenvalues) {
    clip_eigenvalue(lambda);  // throws below -1e-9
  }
  return DensityMatrix(m);
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) sum += std::norm(mat_(i, j));
  return sum;
}

std::array<double, 4> DensityMatrix::spectrum() const {
  const auto sys = hermitian_eigen(mat_);
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = clip_eigenvalue(sys.eigenvalues[i]);
  return out;
}

int DensityMatrix::numerical_rank() const {
  const auto sys = hermitian_eigen(mat_);
  int rank = 0;
  for (double lambda : sys.eigenvalues)
    if (lambda > 1e-9) ++rank;
  return rank;
}

double purity(const DensityMatrix& rho) { return rho.purity(); }

double von_neumann_entropy(const Mat2& rho) {
  const auto sys = hermitian_eigen(rho);
  std::array<double, 4> lam{};
  for (std::size_t i = 0; i < 2; ++i) lam[i] = clip_eigenvalue(sys.eigenvalues[i]);
  return entropy_from_clipped(lam, 2);
}

double von_neumann_entropy(const Mat4& rho) {
  const auto sys = hermitian_eigen(rho);
  std::array<double, 4> lam{};
  for (std::size_t i = 0; i < 4; ++i) lam[i] = clip_eigenvalue(sys.eigenvalues[i]);
  return entropy_from_clipped(lam, 4);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix());
}

double spectrum_entropy(std::array<double, 4> probs) {
  for (double& p : probs) p = clip_eigenvalue(p);
  return entropy_from_clipped(probs, 4);
}

Mat2 bloch_basis(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  Mat2 u;
  u(0, 0) = c;
  u(1, 0) = e * s;
  u(0, 1) = -std::conj(e) * s;
  u(1, 1) = c;
  return u;
}

DensityMatrix make_classical(const ClassicalStateSpec& spec) {
  double sum = 0.0;
  for (double p : spec.probs) {
    if (!(p >= -1e-12)) {
      throw std::invalid_argument("classical spec has a negative probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("classical spec probabilities do not sum to 1");
  }
  if (unitarity_defect(spec.basis_a) > 1e-10 || unitarity_defect(spec.basis_b) > 1e-10) {
    throw std::invalid_argument("classical spec basis is not unitary");
  }

  Mat4 rho;
  for (std::size_t r = 0; r < 2; ++r) {
    Mat2 proj_a;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        proj_a(i, j) = spec.basis_a(i, r) * std::conj(spec.basis_a(j, r));
    for (std::size_t s = 0; s < 2; ++s) {
      const double p = spec.probs[2 * r + s];
      if (p == 0.0) continue;
      Mat2 proj_b;
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          proj_b(i, j) = spec.basis_b(i, s) * std::conj(spec.basis_b(j, s));
      rho += p * tensor(proj_a, proj_b);
    }
  }
  return DensityMatrix::trusted(rho);
}

DensityMatrix sample_random_state(int rank, Rng& rng) {
  if (rank < 1 || rank > 4) {
    throw std::invalid_argument("rank must be in {1,2,3,4}");
  }
  // G G^dag accumulated column by column.
  Mat4 rho;
  for (int col = 0; col < rank; ++col) {
    std::array<Complex, 4> g;
    for (auto& v : g) v = rng.complex_normal();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) rho(i, j) += g[i] * std::conj(g[j]);
  }
  const double tr = rho.trace().real();
  rho *= Complex(1.0 / tr);
  return DensityMatrix::trusted(rho);
}

std::vector<DensityMatrix> sample_random_states(const RandomStateConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<DensityMatrix> out;
  out.reserve(cfg.sample_count);
  for (std::size_t i = 0; i < cfg.sample_count; ++i) {
    out.push_back(sample_random_state(cfg.rank, rng));
  }
  return out;
}

}  // namespace qcorr
