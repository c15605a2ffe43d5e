#pragma once

#include <array>
#include <span>
#include <vector>

#include "qcorr/discord.hpp"
#include "qcorr/states.hpp"

// Analytic maximally-discordant state families and the discord-purity
// boundary delta_max(mu), assembled as the pointwise maximum over the
// applicable branches at each purity.
namespace qcorr {

enum class BellChoice { phi_plus, phi_minus, psi_plus, psi_minus, phi_i, psi_i };

// The maximally entangled vector for a BellChoice; phi_i is
// (|00> + i|11>)/sqrt 2 and psi_i is (|01> - i|10>)/sqrt 2.
std::array<Complex, 4> bell_vector(BellChoice choice);
DensityMatrix bell_projector(BellChoice choice);

// rho(w) = (1-w)/4 I + w |Psi_me><Psi_me| with w in [-1/3, 1];
// purity (1 + 3 w^2)/4.
DensityMatrix werner(double w, BellChoice choice = BellChoice::phi_i);
std::array<double, 4> werner_spectrum(double w);

// Closed form for the symmetric discord of a Werner state: the conditional
// entropy after any projective measurement is direction-independent with
// branch probabilities 1/2 and branch eigenvalues (1 +/- w)/2.
double werner_symmetric_discord(double w);

// The rank <= 3 family
//   rho(a,b,phi) = 1/2 [[1-a+b,0,0,0],[0,a,a e^{-i phi},0],
//                       [0,a e^{i phi},a,0],[0,0,0,1-a-b]]
// with a in [0,1], |b| <= 1-a; eigenvalues {(1-a+b)/2, a, (1-a-b)/2, 0};
// purity ((1-a)^2 + b^2)/2 + a^2. Discord and purity do not depend on phi.
DensityMatrix rank_family(double a, double b, double phi);
std::array<double, 4> rank_family_spectrum(double a, double b);

// Parameter of the rank-2 sub-family member rho(a, 1-a, phi) at purity mu,
// a = (1 + sqrt(2 mu - 1))/2 from mu = a^2 + (1-a)^2 on a in [1/2, 1].
// Its concurrence equals a.
double r2_branch_a(double mu);

// Diagonal classical states with the boundary spectra. The rotated variant
// conjugates by sigma_x (x) I.
ClassicalStateSpec classical_preimage_r4(double w, bool rotated = false);
ClassicalStateSpec classical_preimage_r3(double a, double b);

enum class BoundaryBranch { R4, R3, R2 };

struct BoundaryPoint {
  double mu = 0.0;
  double delta_max = 0.0;
  BoundaryBranch branch = BoundaryBranch::R4;
  double a = 0.0;  // achieving rank-family parameters (R3/R2 branches)
  double b = 0.0;
  double w = 0.0;  // achieving Werner parameter (R4 branch)
};

struct BoundarySearchConfig {
  double a_step = 1e-3;        // rank-family scan resolution at fixed purity
  double golden_tol = 1e-7;    // refinement interval on a
  OptimizerConfig discord_opt{};
};

// Branch values at one purity; Werner branches use the discord module on the
// analytic state, the rank-family branch is a 1-D constrained search since
// the purity fixes b given a.
BoundaryPoint boundary_point(double mu, const BoundarySearchConfig& cfg = {});

std::vector<BoundaryPoint> boundary_curve(std::span<const double> mu_grid,
                                          const BoundarySearchConfig& cfg = {});

// Precomputed fast bound on delta_max for screening large state batches.
// `screen` overshoots by at most the tabulation slack; callers needing the
// exact value at one purity use boundary_point.
class BoundaryEnvelope {
 public:
  explicit BoundaryEnvelope(double mu_step = 1e-3,
                            const BoundarySearchConfig& cfg = fast_config());

  double screen(double mu) const;

  static BoundarySearchConfig fast_config();

 private:
  double mu_step_;
  std::vector<double> r3_table_;  // rank-family branch on [1/3, 1]
};

}  // namespace qcorr
