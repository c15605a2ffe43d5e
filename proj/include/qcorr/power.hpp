#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcorr/discord.hpp"
#include "qcorr/gates.hpp"
#include "qcorr/states.hpp"

// Discording power: the maximum symmetric discord a gate produces from
// classical-classical states of fixed purity. Only the Cartan kernel
// matters; gates sharing a kernel share their discording power, and the
// local-basis scan absorbs any pre/post local factors, which therefore never
// enter the search space.
namespace qcorr {

struct PowerSearchConfig {
  double mu = 0.7;                       // purity of the classical inputs
  double basis_step = 0.1 * kPi;         // local-rotation grid step; must divide pi
  std::size_t probability_samples = 500; // sampled distributions per batch
  std::size_t budget = 100000;           // candidate states per (gate, mu) point
  bool refine = true;                    // Nelder-Mead over the 4 basis angles
  std::uint64_t seed = 1;
  std::size_t threads = 0;               // 0 = QCORR_THREADS or hardware
  OptimizerConfig discord_opt{12, 24, 2, 1e-8, 200};
};

struct PowerResult {
  CartanCoordinates gate;
  double mu = 0.0;
  double dp = 0.0;
  ClassicalStateSpec achieving;
  std::size_t evaluations = 0;
};

// Max of delta[U_c rho_cl U_c^dag] over the sampled classical specs:
// deterministic extremal spectra (two-level, three-level, Werner and
// rank-family distributions at the requested purity) under enumerated slot
// permutations, plus seeded draws of grid bases x sampled spectra.
// Deterministic for fixed config regardless of thread count.
PowerResult discording_power(const CartanCoordinates& gate, const PowerSearchConfig& cfg = {});

std::vector<PowerResult> power_curve(const CartanCoordinates& gate,
                                     std::span<const double> mu_grid,
                                     const PowerSearchConfig& cfg = {});

enum class GateFamily { x_only, xy_equal };  // U_c(a,0,0) and U_c(a,a,0)

std::vector<std::pair<double, double>> angle_sweep(GateFamily family,
                                                   std::span<const double> alpha_grid,
                                                   const PowerSearchConfig& cfg = {});

// Searches for a classical spec mapped by the gate onto the target within
// Frobenius 1e-6. On failure, reports the smallest concurrence of the pulled
// back state over a grid of pre-gate local rotations; a positive value
// witnesses entanglement, hence that no classical preimage exists at all.
struct PreimageSearchResult {
  bool found = false;
  ClassicalStateSpec spec;
  double distance = 0.0;             // Frobenius gap of the best candidate
  double witness_concurrence = 0.0;  // populated when not found
};
PreimageSearchResult preimage_witness(const Mat4& gate, const DensityMatrix& target,
                                      const PowerSearchConfig& cfg = {});

// Distributions with sum p^2 = mu used by the search: the deterministic
// extremal patterns and the Dirichlet-ray samples (exposed for tests).
std::vector<std::array<double, 4>> extremal_spectra(double mu);
std::vector<std::array<double, 4>> sampled_spectra(double mu, std::size_t count, Rng& rng);

}  // namespace qcorr
