#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qcorr/matrix.hpp"
#include "qcorr/rng.hpp"

// Two-qubit density matrices, classical-classical state construction and
// random state sampling by rank.
namespace qcorr {

class DensityMatrix {
 public:
  // Validates Hermiticity, unit trace and positivity before accepting.
  static DensityMatrix make(const Mat4& m);

  // Construction-time invariants guaranteed by the caller.
  static DensityMatrix trusted(const Mat4& m) { return DensityMatrix(m); }

  const Mat4& matrix() const { return mat_; }

  double purity() const;

  // Eigenvalues, descending, clipped to the positivity policy.
  std::array<double, 4> spectrum() const;

  // Number of eigenvalues above 1e-9.
  int numerical_rank() const;

 private:
  explicit DensityMatrix(const Mat4& m) : mat_(m) {}
  Mat4 mat_;
};

double purity(const DensityMatrix& rho);

// -sum lambda log2 lambda with 0 log 0 := 0. Negative round-off eigenvalues
// are clipped and the spectrum renormalized before evaluation.
double von_neumann_entropy(const Mat2& rho);
double von_neumann_entropy(const Mat4& rho);
double von_neumann_entropy(const DensityMatrix& rho);

// Entropy of a classical spectrum (clipped and renormalized).
double spectrum_entropy(std::array<double, 4> probs);

// A convex combination of products of orthogonal local projectors:
//   rho = sum_{r,s} p[2r+s] |alpha_r><alpha_r| (x) |beta_s><beta_s|
// where the basis columns are |alpha_0>, |alpha_1> and |beta_0>, |beta_1>.
struct ClassicalStateSpec {
  std::array<double, 4> probs{};
  Mat2 basis_a = Mat2::identity();
  Mat2 basis_b = Mat2::identity();

  double spec_purity() const {
    return probs[0] * probs[0] + probs[1] * probs[1] + probs[2] * probs[2] +
           probs[3] * probs[3];
  }
};

// Throws if the probability vector is not a distribution (sum 1 within 1e-12,
// entries nonnegative) or a basis is not unitary.
DensityMatrix make_classical(const ClassicalStateSpec& spec);

// Local basis whose first column points along the Bloch direction
// (sin t cos p, sin t sin p, cos t).
Mat2 bloch_basis(double theta, double phi);

struct RandomStateConfig {
  int rank = 4;  // in {1,2,3,4}
  std::size_t sample_count = 1;
  std::uint64_t seed = 0;
};

// Ginibre construction rho = G G^dag / tr(G G^dag) with G a 4 x rank matrix
// of standard complex normals; rank-exact almost surely, deterministic per
// seed.
std::vector<DensityMatrix> sample_random_states(const RandomStateConfig& cfg);
DensityMatrix sample_random_state(int rank, Rng& rng);

}  // namespace qcorr
