#include "qcorr/discord.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "qcorr/optim.hpp"

namespace qcorr {

namespace {

// Hermitian 2x2 stored as (m00, m11, Re m01, Im m01).
struct Herm2 {
  double d0 = 0.0, d1 = 0.0, re = 0.0, im = 0.0;
};

Herm2 to_herm2(const Mat2& m) {
  return Herm2{m(0, 0).real(), m(1, 1).real(), m(0, 1).real(), m(0, 1).imag()};
}

// Binary-outcome entropy of an unnormalized Hermitian PSD 2x2 block with
// weight p = tr(M); returns p * S(M/p).
inline double weighted_branch_entropy(const Herm2& m) {
  const double p = m.d0 + m.d1;
  if (p < 1e-12) return 0.0;
  const double half_tr = 0.5 * p;
  double det = m.d0 * m.d1 - (m.re * m.re + m.im * m.im);
  double disc = half_tr * half_tr - det;
  if (disc < 0.0) disc = 0.0;
  const double root = std::sqrt(disc);
  double s = 0.0;
  for (const double lambda : {half_tr + root, half_tr - root}) {
    const double q = lambda / p;
    if (q > 0.0) s -= q * std::log2(q);
  }
  return p * s;
}

// Conditional-entropy objective for a fixed state and measured side:
//   f(n) = sum_{k=+,-} p_k S(rho_other^k),  P_k = (I +/- n.sigma)/2.
// The unnormalized branch operators are (marginal +/- sum_j n_j T_j)/2 with
// T_j the sigma_j contraction of rho over the measured side.
struct ConditionalEntropyObjective {
  Herm2 marginal;
  Herm2 t[3];

  double eval_direction(double nx, double ny, double nz) const {
    Herm2 shift;
    shift.d0 = nx * t[0].d0 + ny * t[1].d0 + nz * t[2].d0;
    shift.d1 = nx * t[0].d1 + ny * t[1].d1 + nz * t[2].d1;
    shift.re = nx * t[0].re + ny * t[1].re + nz * t[2].re;
    shift.im = nx * t[0].im + ny * t[1].im + nz * t[2].im;

    Herm2 plus{0.5 * (marginal.d0 + shift.d0), 0.5 * (marginal.d1 + shift.d1),
               0.5 * (marginal.re + shift.re), 0.5 * (marginal.im + shift.im)};
    Herm2 minus{0.5 * (marginal.d0 - shift.d0), 0.5 * (marginal.d1 - shift.d1),
                0.5 * (marginal.re - shift.re), 0.5 * (marginal.im - shift.im)};
    return weighted_branch_entropy(plus) + weighted_branch_entropy(minus);
  }

  double eval(double theta, double phi) const {
    const double st = std::sin(theta);
    return eval_direction(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
  }
};

// T_j[b,b'] = sum_{a,a''} rho[(a b),(a'' b')] sigma_j[a'',a] for measured = A,
// and the A<->B transposed contraction for measured = B.
ConditionalEntropyObjective build_objective(const Mat4& rho, Subsystem measured) {
  ConditionalEntropyObjective obj;
  const Mat2 sig[3] = {sigma_x(), sigma_y(), sigma_z()};
  if (measured == Subsystem::A) {
    obj.marginal = to_herm2(partial_trace(rho, Subsystem::A));
    for (int j = 0; j < 3; ++j) {
      Mat2 t;
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t bp = 0; bp < 2; ++bp) {
          Complex v = 0.0;
          for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t a2 = 0; a2 < 2; ++a2)
              v += rho(2 * a + b, 2 * a2 + bp) * sig[j](a2, a);
          t(b, bp) = v;
        }
      obj.t[j] = to_herm2(t);
    }
  } else {
    obj.marginal = to_herm2(partial_trace(rho, Subsystem::B));
    for (int j = 0; j < 3; ++j) {
      Mat2 t;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t ap = 0; ap < 2; ++ap) {
          Complex v = 0.0;
          for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t b2 = 0; b2 < 2; ++b2)
              v += rho(2 * a + b, 2 * ap + b2) * sig[j](b2, b);
          t(a, ap) = v;
        }
      obj.t[j] = to_herm2(t);
    }
  }
  return obj;
}

struct Direction {
  double theta, phi, nx, ny, nz;
};

// Grid directions are shared across calls; keyed by the grid dimensions.
const std::vector<Direction>& direction_grid(int n_theta, int n_phi) {
  static std::mutex mutex;
  static std::unordered_map<long, std::vector<Direction>> cache;
  const long key = static_cast<long>(n_theta) * 100000L + n_phi;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<Direction> grid;
  grid.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    const double theta = (n_theta > 1) ? kPi * i / (n_theta - 1) : 0.0;
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * kPi * j / n_phi;
      grid.push_back({theta, phi, st * std::cos(phi), st * std::sin(phi), ct});
    }
  }
  return cache.emplace(key, std::move(grid)).first->second;
}

MeasurementOptimum minimize_objective(const ConditionalEntropyObjective& obj,
                                      const OptimizerConfig& cfg) {
  const auto& grid = direction_grid(cfg.grid_theta, cfg.grid_phi);

  const int starts = std::max(1, cfg.nm_starts);
  std::vector<std::size_t> best_idx;
  std::vector<double> best_val;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = obj.eval_direction(grid[k].nx, grid[k].ny, grid[k].nz);
    if (static_cast<int>(best_idx.size()) < starts) {
      best_idx.push_back(k);
      best_val.push_back(v);
    } else {
      std::size_t worst = 0;
      for (std::size_t i = 1; i < best_val.size(); ++i)
        if (best_val[i] > best_val[worst]) worst = i;
      if (v < best_val[worst]) {
        best_idx[worst] = k;
        best_val[worst] = v;
      }
    }
  }

  MeasurementOptimum out;
  out.value = best_val[0];
  out.argmin = {grid[best_idx[0]].theta, grid[best_idx[0]].phi};
  for (std::size_t i = 1; i < best_val.size(); ++i) {
    if (best_val[i] < out.value) {
      out.value = best_val[i];
      out.argmin = {grid[best_idx[i]].theta, grid[best_idx[i]].phi};
    }
  }

  const double step_theta = 0.5 * kPi / std::max(1, cfg.grid_theta - 1);
  const double step_phi = kPi / cfg.grid_phi;
  for (std::size_t i = 0; i < best_idx.size(); ++i) {
    const auto& d = grid[best_idx[i]];
    const auto res = nelder_mead(
        [&obj](const std::vector<double>& x) { return obj.eval(x[0], x[1]); },
        {d.theta, d.phi}, {step_theta, step_phi}, cfg.nm_tolerance, cfg.nm_max_iter);
    if (res.value < out.value) {
      out.value = res.value;
      out.argmin = {res.x[0], res.x[1]};
    }
  }

  // Report angles in the canonical ranges; the antipodal direction labels
  // the same two-projector measurement.
  double theta = std::fmod(out.argmin.theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  double phi = out.argmin.phi;
  if (theta > kPi) {
    theta = 2.0 * kPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  out.argmin = {theta, phi};
  return out;
}

double closed_entropy(const Herm2& m) { return weighted_branch_entropy(m); }

DiscordReport discord_impl(const DensityMatrix& rho, double s_ab, const OptimizerConfig& cfg) {
  const Mat4& m = rho.matrix();
  const auto obj_a = build_objective(m, Subsystem::A);
  const auto obj_b = build_objective(m, Subsystem::B);

  // Marginal entropies from the cached 2x2 blocks (trace 1 each).
  const double s_a = closed_entropy(obj_b.marginal);
  const double s_b = closed_entropy(obj_a.marginal);

  DiscordReport report;
  report.mutual_information = s_a + s_b - s_ab;

  const auto min_a = minimize_objective(obj_a, cfg);
  const auto min_b = minimize_objective(obj_b, cfg);

  report.classical_ab = s_b - min_a.value;
  report.classical_ba = s_a - min_b.value;
  report.discord_ab = report.mutual_information - report.classical_ab;
  report.discord_ba = report.mutual_information - report.classical_ba;
  report.symmetric = 0.5 * (report.discord_ab + report.discord_ba);
  report.argmin_ab = min_a.argmin;
  report.argmin_ba = min_b.argmin;
  return report;
}

}  // namespace

Mat2 ProjectiveMeasurement::projector_plus() const {
  const double st = std::sin(theta);
  const double nx = st * std::cos(phi);
  const double ny = st * std::sin(phi);
  const double nz = std::cos(theta);
  Mat2 p;
  p(0, 0) = 0.5 * (1.0 + nz);
  p(1, 1) = 0.5 * (1.0 - nz);
  p(0, 1) = 0.5 * Complex(nx, -ny);
  p(1, 0) = 0.5 * Complex(nx, ny);
  return p;
}

Mat2 ProjectiveMeasurement::projector_minus() const {
  return Mat2::identity() - projector_plus();
}

double mutual_information(const DensityMatrix& rho) {
  const double s_a = von_neumann_entropy(partial_trace(rho.matrix(), Subsystem::B));
  const double s_b = von_neumann_entropy(partial_trace(rho.matrix(), Subsystem::A));
  return s_a + s_b - von_neumann_entropy(rho);
}

double conditional_entropy_after_measurement(const DensityMatrix& rho, Subsystem measured,
                                             const ProjectiveMeasurement& m) {
  const Mat2 projectors[2] = {m.projector_plus(), m.projector_minus()};
  double total = 0.0;
  for (const Mat2& p : projectors) {
    const Mat4 full = (measured == Subsystem::A) ? tensor(p, Mat2::identity())
                                                 : tensor(Mat2::identity(), p);
    const Mat4 branch = rho.matrix() * full;
    const double pk = branch.trace().real();
    if (pk < 1e-12) continue;
    const Mat2 conditional =
        partial_trace(branch, measured) * Complex(1.0 / pk);
    total += pk * von_neumann_entropy(conditional);
  }
  return total;
}

MeasurementOptimum minimize_conditional_entropy(const DensityMatrix& rho, Subsystem measured,
                                                const OptimizerConfig& cfg) {
  return minimize_objective(build_objective(rho.matrix(), measured), cfg);
}

ClassicalCorrelation classical_correlation(const DensityMatrix& rho, Subsystem measured,
                                           const OptimizerConfig& cfg) {
  // Tracing out the measured side leaves the inferred subsystem.
  const double s_other = von_neumann_entropy(partial_trace(rho.matrix(), measured));
  const auto opt = minimize_conditional_entropy(rho, measured, cfg);
  return ClassicalCorrelation{s_other - opt.value, opt.argmin};
}

DiscordReport discord(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  return discord_impl(rho, von_neumann_entropy(rho), cfg);
}

DiscordReport discord(const DensityMatrix& rho, const std::array<double, 4>& spectrum,
                      const OptimizerConfig& cfg) {
  return discord_impl(rho, spectrum_entropy(spectrum), cfg);
}

double symmetric_discord(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  return discord(rho, cfg).symmetric;
}

double symmetric_discord(const DensityMatrix& rho, const std::array<double, 4>& spectrum,
                         const OptimizerConfig& cfg) {
  return discord(rho, spectrum, cfg).symmetric;
}

double concurrence(const DensityMatrix& rho) {
  const auto sys = hermitian_eigen(rho.matrix());

  Mat4 sqrt_rho;
  for (std::size_t k = 0; k < 4; ++k) {
    const double lambda = clip_eigenvalue(sys.eigenvalues[k]);
    const double root = std::sqrt(lambda);
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        sqrt_rho(i, j) += root * sys.eigenvectors(i, k) * std::conj(sys.eigenvectors(j, k));
  }

  // Spin-flipped state (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
  const Mat4 yy = tensor(sigma_y(), sigma_y());
  Mat4 conj_rho;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) conj_rho(i, j) = std::conj(rho.matrix()(i, j));
  const Mat4 flipped = yy * conj_rho * yy;

  const Mat4 product = sqrt_rho * flipped * sqrt_rho;
  const auto psys = hermitian_eigen(product);
  double lam[4];
  for (std::size_t i = 0; i < 4; ++i) {
    double value = psys.eigenvalues[i];
    if (value < 0.0) value = 0.0;
    lam[i] = std::sqrt(value);
  }
  const double c = lam[0] - lam[1] - lam[2] - lam[3];
  return c > 0.0 ? c : 0.0;
}

}  // namespace qcorr
