#pragma once

#include <array>
#include <span>

#include "qcorr/matrix.hpp"
#include "qcorr/states.hpp"

// Quantum mutual information, classical correlations under projective
// measurements, one-way and symmetric discord, and concurrence.
// All entropies are base-2, so a Bell state has discord exactly 1.
namespace qcorr {

// Local projective measurement {P+, P-} onto the +/- Bloch directions
// (sin t cos p, sin t sin p, cos t).
struct ProjectiveMeasurement {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  Mat2 projector_plus() const;
  Mat2 projector_minus() const;
};

// Measurement-minimizer settings. The coarse grid defeats local minima,
// Nelder-Mead restarts from the best grid points supply precision.
struct OptimizerConfig {
  int grid_theta = 24;          // points on [0, pi], inclusive
  int grid_phi = 48;            // points on [0, 2 pi), periodic
  int nm_starts = 3;            // restarts from the best grid points
  double nm_tolerance = 1e-8;   // simplex diameter
  int nm_max_iter = 300;
};

struct MeasurementOptimum {
  double value = 0.0;  // min_k sum p_k S(rho^k) over the searched measurements
  ProjectiveMeasurement argmin;
};

struct DiscordReport {
  double mutual_information = 0.0;
  double classical_ab = 0.0;  // measurement on A
  double classical_ba = 0.0;  // measurement on B
  double discord_ab = 0.0;
  double discord_ba = 0.0;
  double symmetric = 0.0;     // (discord_ab + discord_ba) / 2
  ProjectiveMeasurement argmin_ab;
  ProjectiveMeasurement argmin_ba;
};

// I = S(A) + S(B) - S(AB).
double mutual_information(const DensityMatrix& rho);

// sum_k p_k S(rho_other^k) for the two-outcome measurement on `measured`.
// Outcomes with probability below 1e-12 contribute zero.
double conditional_entropy_after_measurement(const DensityMatrix& rho, Subsystem measured,
                                             const ProjectiveMeasurement& m);

MeasurementOptimum minimize_conditional_entropy(const DensityMatrix& rho, Subsystem measured,
                                                const OptimizerConfig& cfg = {});

// C = S(other) - min over projective measurements of the conditional entropy.
struct ClassicalCorrelation {
  double value = 0.0;
  ProjectiveMeasurement argmin;
};
ClassicalCorrelation classical_correlation(const DensityMatrix& rho, Subsystem measured,
                                           const OptimizerConfig& cfg = {});

DiscordReport discord(const DensityMatrix& rho, const OptimizerConfig& cfg = {});
// Variant for states whose spectrum is already known (skips the 4x4
// eigendecomposition; the spectrum must match rho's to clipping accuracy).
DiscordReport discord(const DensityMatrix& rho, const std::array<double, 4>& spectrum,
                      const OptimizerConfig& cfg = {});

double symmetric_discord(const DensityMatrix& rho, const OptimizerConfig& cfg = {});
double symmetric_discord(const DensityMatrix& rho, const std::array<double, 4>& spectrum,
                         const OptimizerConfig& cfg = {});

// Wootters concurrence via the spin-flipped product sqrt(rho) rho~ sqrt(rho).
double concurrence(const DensityMatrix& rho);

}  // namespace qcorr
