#include "qcorr/mdms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcorr/optim.hpp"

namespace qcorr {

namespace {

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

// Largest/smallest rank-family a compatible with purity mu (b^2 >= 0).
void rank_family_a_range(double mu, double& a_min, double& a_max) {
  const double disc = std::sqrt(std::max(0.0, 6.0 * mu - 2.0));
  a_min = std::max(0.0, (1.0 - disc) / 3.0);
  a_max = std::min(1.0, (1.0 + disc) / 3.0);
}

double rank_family_b_for_purity(double a, double mu) {
  const double b2 = 2.0 * (mu - a * a) - (1.0 - a) * (1.0 - a);
  if (b2 <= 0.0) return 0.0;
  return std::min(std::sqrt(b2), 1.0 - a);
}

struct RankBranchResult {
  double delta = -1.0;
  double a = 0.0;
  double b = 0.0;
};

// Max of the symmetric discord over the fixed-purity contour of the rank
// family, scanning each admissible a-segment and refining by golden section.
RankBranchResult rank_branch_max(double mu, const BoundarySearchConfig& cfg) {
  RankBranchResult best;
  if (mu < 1.0 / 3.0 - 1e-12) return best;

  double a_min = 0.0, a_max = 0.0;
  rank_family_a_range(mu, a_min, a_max);

  // For mu >= 1/2 the interval around a = 1/2 would need b > 1-a; the
  // admissible set splits into two segments whose inner edges carry b = 1-a.
  std::vector<std::pair<double, double>> segments;
  if (mu >= 0.5) {
    const double gap = std::sqrt(2.0 * mu - 1.0);
    const double left_edge = (1.0 - gap) / 2.0;
    const double right_edge = (1.0 + gap) / 2.0;
    if (left_edge > a_min) segments.emplace_back(a_min, std::min(left_edge, a_max));
    if (right_edge < a_max) segments.emplace_back(std::max(right_edge, a_min), a_max);
    else if (right_edge <= a_max + 1e-12) segments.emplace_back(a_max, a_max);
  } else {
    segments.emplace_back(a_min, a_max);
  }

  auto eval = [&](double a) {
    const double b = rank_family_b_for_purity(a, mu);
    return symmetric_discord(rank_family(a, b, 0.0), rank_family_spectrum(a, b),
                             cfg.discord_opt);
  };

  for (const auto& [lo, hi] : segments) {
    if (hi < lo) continue;
    const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) / cfg.a_step)));
    double best_a = lo;
    double best_v = eval(lo);
    for (int i = 1; i <= steps; ++i) {
      const double a = lo + (hi - lo) * i / steps;
      const double v = eval(a);
      if (v > best_v) {
        best_v = v;
        best_a = a;
      }
    }
    if (hi > lo) {
      const double span = (hi - lo) / steps;
      const double ref_lo = std::max(lo, best_a - span);
      const double ref_hi = std::min(hi, best_a + span);
      const double refined = golden_section_max(eval, ref_lo, ref_hi, cfg.golden_tol);
      const double refined_v = eval(refined);
      if (refined_v > best_v) {
        best_v = refined_v;
        best_a = refined;
      }
    }
    if (best_v > best.delta) {
      best.delta = best_v;
      best.a = best_a;
      best.b = rank_family_b_for_purity(best_a, mu);
    }
  }
  return best;
}

}  // namespace

std::array<Complex, 4> bell_vector(BellChoice choice) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  switch (choice) {
    case BellChoice::phi_plus: return {r, 0.0, 0.0, r};
    case BellChoice::phi_minus: return {r, 0.0, 0.0, -r};
    case BellChoice::psi_plus: return {0.0, r, r, 0.0};
    case BellChoice::psi_minus: return {0.0, r, -r, 0.0};
    case BellChoice::phi_i: return {r, 0.0, 0.0, r * i};
    case BellChoice::psi_i: return {0.0, r, -r * i, 0.0};
  }
  throw std::invalid_argument("unknown BellChoice");
}

DensityMatrix bell_projector(BellChoice choice) {
  const auto v = bell_vector(choice);
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return DensityMatrix::trusted(m);
}

DensityMatrix werner(double w, BellChoice choice) {
  if (w < -1.0 / 3.0 - 1e-12 || w > 1.0 + 1e-12) {
    throw std::invalid_argument("Werner parameter must lie in [-1/3, 1]");
  }
  Mat4 m = Complex((1.0 - w) / 4.0) * Mat4::identity();
  m += Complex(w) * bell_projector(choice).matrix();
  return DensityMatrix::trusted(m);
}

std::array<double, 4> werner_spectrum(double w) {
  return {(1.0 - w) / 4.0, (1.0 - w) / 4.0, (1.0 - w) / 4.0, (1.0 + 3.0 * w) / 4.0};
}

double werner_symmetric_discord(double w) {
  const auto spec = werner_spectrum(w);
  double s_ab = 0.0;
  for (double p : spec)
    if (p > 0.0) s_ab -= p * std::log2(p);
  return 1.0 - s_ab + binary_entropy((1.0 + w) / 2.0);
}

DensityMatrix rank_family(double a, double b, double phi) {
  if (a < -1e-12 || a > 1.0 + 1e-12 || std::abs(b) > 1.0 - a + 1e-12) {
    throw std::invalid_argument("rank_family requires a in [0,1] and |b| <= 1-a");
  }
  Mat4 m;
  m(0, 0) = 0.5 * (1.0 - a + b);
  m(3, 3) = 0.5 * (1.0 - a - b);
  m(1, 1) = 0.5 * a;
  m(2, 2) = 0.5 * a;
  const Complex e = std::polar(0.5 * a, phi);
  m(1, 2) = std::conj(e);
  m(2, 1) = e;
  return DensityMatrix::trusted(m);
}

std::array<double, 4> rank_family_spectrum(double a, double b) {
  return {0.5 * (1.0 - a + b), a, 0.5 * (1.0 - a - b), 0.0};
}

double r2_branch_a(double mu) {
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, 2.0 * mu - 1.0)));
}

ClassicalStateSpec classical_preimage_r4(double w, bool rotated) {
  ClassicalStateSpec spec;
  spec.probs = werner_spectrum(w);
  if (rotated) spec.basis_a = sigma_x();
  return spec;
}

ClassicalStateSpec classical_preimage_r3(double a, double b) {
  ClassicalStateSpec spec;
  spec.probs = {0.5 * (1.0 - a + b), 0.0, a, 0.5 * (1.0 - a - b)};
  return spec;
}

BoundaryPoint boundary_point(double mu, const BoundarySearchConfig& cfg) {
  if (mu < 0.25 - 1e-12 || mu > 1.0 + 1e-12) {
    throw std::invalid_argument("purity must lie in [1/4, 1]");
  }
  mu = std::clamp(mu, 0.25, 1.0);

  BoundaryPoint best;
  best.mu = mu;
  best.delta_max = -1.0;

  const double w_mag = std::sqrt(std::max(0.0, (4.0 * mu - 1.0) / 3.0));
  // The boundary branch uses the negative Werner parameter; the positive
  // solution exists at every purity and joins the pointwise maximum.
  for (const double w : {-w_mag, w_mag}) {
    if (w < -1.0 / 3.0 - 1e-9) continue;
    const double wc = std::max(w, -1.0 / 3.0);
    const double delta =
        symmetric_discord(werner(wc), werner_spectrum(wc), cfg.discord_opt);
    if (delta > best.delta_max) {
      best.delta_max = delta;
      best.branch = BoundaryBranch::R4;
      best.w = wc;
      best.a = 0.0;
      best.b = 0.0;
    }
  }

  const auto rank_best = rank_branch_max(mu, cfg);
  if (rank_best.delta > best.delta_max) {
    best.delta_max = rank_best.delta;
    best.a = rank_best.a;
    best.b = rank_best.b;
    best.w = 0.0;
    best.branch = (std::abs(rank_best.b - (1.0 - rank_best.a)) < 1e-6)
                      ? BoundaryBranch::R2
                      : BoundaryBranch::R3;
  }
  return best;
}

std::vector<BoundaryPoint> boundary_curve(std::span<const double> mu_grid,
                                          const BoundarySearchConfig& cfg) {
  std::vector<BoundaryPoint> out;
  out.reserve(mu_grid.size());
  for (double mu : mu_grid) out.push_back(boundary_point(mu, cfg));
  return out;
}

BoundarySearchConfig BoundaryEnvelope::fast_config() {
  BoundarySearchConfig cfg;
  cfg.a_step = 5e-3;
  cfg.golden_tol = 1e-6;
  cfg.discord_opt = OptimizerConfig{12, 24, 2, 1e-8, 200};
  return cfg;
}

BoundaryEnvelope::BoundaryEnvelope(double mu_step, const BoundarySearchConfig& cfg)
    : mu_step_(mu_step) {
  const double lo = 1.0 / 3.0;
  const std::size_t count = static_cast<std::size_t>(std::ceil((1.0 - lo) / mu_step_)) + 1;
  r3_table_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double mu = std::min(1.0, lo + static_cast<double>(i) * mu_step_);
    r3_table_[i] = rank_branch_max(mu, cfg).delta;
  }
}

double BoundaryEnvelope::screen(double mu) const {
  double bound = 0.0;
  const double w_mag = std::sqrt(std::max(0.0, (4.0 * mu - 1.0) / 3.0));
  if (w_mag <= 1.0 / 3.0 + 1e-9) {
    bound = std::max(bound, werner_symmetric_discord(std::max(-w_mag, -1.0 / 3.0)));
  }
  bound = std::max(bound, werner_symmetric_discord(std::min(w_mag, 1.0)));

  const double lo = 1.0 / 3.0;
  if (mu >= lo && !r3_table_.empty()) {
    const double pos = (mu - lo) / mu_step_;
    const std::size_t i0 = std::min(r3_table_.size() - 1,
                                    static_cast<std::size_t>(std::floor(pos)));
    const std::size_t i1 = std::min(r3_table_.size() - 1, i0 + 1);
    bound = std::max(bound, std::max(r3_table_[i0], r3_table_[i1]));
  }
  return bound;
}

}  // namespace qcorr
