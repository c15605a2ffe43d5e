#include "qcorr/power.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcorr/mdms.hpp"
#include "qcorr/optim.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

namespace {

struct Candidate {
  std::array<double, 4> angles{};  // theta_a, phi_a, theta_b, phi_b
  std::array<double, 4> probs{};
};

// Total order used for reductions: higher discord wins, ties broken by the
// lexicographic encoding (angles, probs) so parallel chunking cannot change
// the reported optimum.
bool candidate_less(const Candidate& a, const Candidate& b) {
  for (int i = 0; i < 4; ++i) {
    if (a.angles[i] != b.angles[i]) return a.angles[i] < b.angles[i];
  }
  for (int i = 0; i < 4; ++i) {
    if (a.probs[i] != b.probs[i]) return a.probs[i] < b.probs[i];
  }
  return false;
}

ClassicalStateSpec spec_from_candidate(const Candidate& c) {
  ClassicalStateSpec spec;
  spec.probs = c.probs;
  spec.basis_a = bloch_basis(c.angles[0], c.angles[1]);
  spec.basis_b = bloch_basis(c.angles[2], c.angles[3]);
  return spec;
}

const std::vector<std::array<int, 4>>& slot_permutations() {
  static const std::vector<std::array<int, 4>> perms = [] {
    std::vector<std::array<int, 4>> out;
    std::array<int, 4> idx = {0, 1, 2, 3};
    do {
      out.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
  }();
  return perms;
}

void push_permutations(const std::array<double, 4>& pattern,
                       const std::array<double, 4>& angles, std::vector<Candidate>& out) {
  std::vector<std::array<double, 4>> seen;
  seen.reserve(24);
  for (const auto& perm : slot_permutations()) {
    std::array<double, 4> p{};
    for (int i = 0; i < 4; ++i) p[i] = pattern[perm[i]];
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
    seen.push_back(p);
    out.push_back(Candidate{angles, p});
  }
}

void normalize_pattern(std::array<double, 4>& p) {
  double sum = 0.0;
  for (double& v : p) {
    if (v < 0.0 && v > -1e-12) v = 0.0;
    sum += v;
  }
  for (double& v : p) v /= sum;
}

double evaluate_candidate(const Mat4& u, const Candidate& c, const OptimizerConfig& opt) {
  const DensityMatrix rho = make_classical(spec_from_candidate(c));
  const DensityMatrix evolved = apply(u, rho);
  return symmetric_discord(evolved, c.probs, opt);
}

}  // namespace

std::vector<std::array<double, 4>> extremal_spectra(double mu) {
  if (mu < 0.25 - 1e-9 || mu > 1.0 + 1e-9) {
    throw std::invalid_argument("purity must lie in [1/4, 1]");
  }
  mu = std::clamp(mu, 0.25, 1.0);
  std::vector<std::array<double, 4>> out;

  const double w_mag = std::sqrt(std::max(0.0, (4.0 * mu - 1.0) / 3.0));
  if (w_mag <= 1.0 / 3.0 + 1e-12) {
    std::array<double, 4> p = werner_spectrum(std::max(-w_mag, -1.0 / 3.0));
    normalize_pattern(p);
    out.push_back(p);
  }
  {
    std::array<double, 4> p = werner_spectrum(std::min(w_mag, 1.0));
    normalize_pattern(p);
    out.push_back(p);
  }

  if (mu >= 0.5) {
    const double a = 0.5 * (1.0 + std::sqrt(2.0 * mu - 1.0));
    out.push_back({a, 1.0 - a, 0.0, 0.0});
  }

  // Symmetric three-level pattern (q, q, 1-2q, 0) at the requested purity.
  if (mu >= 1.0 / 3.0) {
    const double disc = std::sqrt(std::max(0.0, 6.0 * mu - 2.0));
    for (const double q : {(2.0 - disc) / 6.0, (2.0 + disc) / 6.0}) {
      if (q < -1e-12 || q > 0.5 + 1e-12) continue;
      std::array<double, 4> p = {q, q, 1.0 - 2.0 * q, 0.0};
      normalize_pattern(p);
      out.push_back(p);
    }
  }

  // Rank-family spectra along the fixed-purity contour. For mu >= 1/2 the
  // contour splits into two admissible a-segments whose inner edges carry
  // b = 1 - a; each segment is scanned separately so the edges are included.
  if (mu >= 1.0 / 3.0) {
    const double disc = std::sqrt(std::max(0.0, 6.0 * mu - 2.0));
    const double a_min = std::max(0.0, (1.0 - disc) / 3.0);
    const double a_max = std::min(1.0, (1.0 + disc) / 3.0);
    std::vector<std::pair<double, double>> segments;
    if (mu >= 0.5) {
      const double gap = std::sqrt(2.0 * mu - 1.0);
      const double left_edge = (1.0 - gap) / 2.0;
      const double right_edge = (1.0 + gap) / 2.0;
      if (left_edge > a_min) segments.emplace_back(a_min, std::min(left_edge, a_max));
      if (right_edge <= a_max) segments.emplace_back(right_edge, a_max);
    } else {
      segments.emplace_back(a_min, a_max);
    }
    constexpr int kContourPoints = 32;
    for (const auto& [lo, hi] : segments) {
      for (int i = 0; i <= kContourPoints; ++i) {
        const double a = lo + (hi - lo) * i / kContourPoints;
        const double b2 = 2.0 * (mu - a * a) - (1.0 - a) * (1.0 - a);
        if (b2 < -1e-12) continue;
        const double b = std::min(std::sqrt(std::max(0.0, b2)), 1.0 - a);
        std::array<double, 4> p = {0.5 * (1.0 - a + b), 0.0, a, 0.5 * (1.0 - a - b)};
        normalize_pattern(p);
        out.push_back(p);
      }
    }
  }

  if (out.empty()) out.push_back({0.25, 0.25, 0.25, 0.25});
  return out;
}

std::vector<std::array<double, 4>> sampled_spectra(double mu, std::size_t count, Rng& rng) {
  std::vector<std::array<double, 4>> out;
  out.reserve(count);
  if (count == 0) return out;

  if (mu <= 0.25 + 1e-12) {
    out.assign(count, {0.25, 0.25, 0.25, 0.25});
    return out;
  }
  if (mu >= 1.0 - 1e-12) {
    out.assign(count, {1.0, 0.0, 0.0, 0.0});
    return out;
  }

  // Dirichlet(1,1,1,1) directions; the ray from the uniform point toward the
  // draw crosses the sum p^2 = mu shell at a closed-form parameter. Rays
  // leaving the simplex before reaching the shell are rejected.
  const std::size_t max_attempts = 400 * count;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    std::array<double, 4> x{};
    double sum = 0.0;
    for (double& v : x) {
      v = -std::log(rng.uniform_positive());
      sum += v;
    }
    double d2 = 0.0;
    std::array<double, 4> d{};
    for (int i = 0; i < 4; ++i) {
      x[i] /= sum;
      d[i] = x[i] - 0.25;
      d2 += d[i] * d[i];
    }
    if (d2 < 1e-14) continue;

    const double t = std::sqrt((mu - 0.25) / d2);
    double t_exit = 1e300;
    for (int i = 0; i < 4; ++i) {
      if (d[i] < 0.0) t_exit = std::min(t_exit, -0.25 / d[i]);
    }
    if (t > t_exit * (1.0 + 1e-12)) continue;

    std::array<double, 4> p{};
    for (int i = 0; i < 4; ++i) p[i] = std::max(0.0, 0.25 + t * d[i]);
    normalize_pattern(p);
    out.push_back(p);
  }

  // High purities reject most rays; pad with the two-level distribution.
  while (out.size() < count) {
    const double a = 0.5 * (1.0 + std::sqrt(std::max(0.0, 2.0 * mu - 1.0)));
    out.push_back({a, 1.0 - a, 0.0, 0.0});
  }
  return out;
}

PowerResult discording_power(const CartanCoordinates& gate, const PowerSearchConfig& cfg) {
  if (cfg.mu < 0.25 - 1e-9 || cfg.mu > 1.0 + 1e-9) {
    throw std::invalid_argument("purity must lie in [1/4, 1]");
  }
  const double steps_per_pi = kPi / cfg.basis_step;
  if (std::abs(steps_per_pi - std::round(steps_per_pi)) > 1e-9) {
    throw std::invalid_argument("basis_step must divide pi");
  }

  const Mat4 u = cartan_kernel(gate);
  const double mu = std::clamp(cfg.mu, 0.25, 1.0);

  std::vector<Candidate> candidates;
  candidates.reserve(cfg.budget + 64);

  for (const auto& pattern : extremal_spectra(mu)) {
    push_permutations(pattern, {0.0, 0.0, 0.0, 0.0}, candidates);
  }

  const int theta_points = static_cast<int>(std::round(kPi / cfg.basis_step)) + 1;
  const int phi_points = static_cast<int>(std::round(2.0 * kPi / cfg.basis_step));
  if (candidates.size() < cfg.budget) {
    Rng rng(mix_seed(cfg.seed));
    const auto pool = sampled_spectra(mu, std::max<std::size_t>(1, cfg.probability_samples), rng);
    const std::size_t draws = (cfg.budget - candidates.size()) / 24;
    for (std::size_t k = 0; k < draws; ++k) {
      std::array<double, 4> angles{};
      angles[0] = cfg.basis_step * static_cast<double>(rng.next_u64() % theta_points);
      angles[1] = cfg.basis_step * static_cast<double>(rng.next_u64() % phi_points);
      angles[2] = cfg.basis_step * static_cast<double>(rng.next_u64() % theta_points);
      angles[3] = cfg.basis_step * static_cast<double>(rng.next_u64() % phi_points);
      const auto& pattern = pool[rng.next_u64() % pool.size()];
      push_permutations(pattern, angles, candidates);
    }
  }

  struct Best {
    double value = -1e300;
    std::size_t index = 0;
    bool valid = false;
  };
  const std::size_t threads = resolve_thread_count(cfg.threads);
  const std::size_t n = candidates.size();
  const std::size_t n_chunks = std::max<std::size_t>(1, std::min(n, threads == 1 ? 1 : 4 * threads));
  std::vector<Best> chunk_best(n_chunks);
  const std::size_t chunk_len = (n + n_chunks - 1) / n_chunks;

  parallel_for_chunks(n_chunks, threads, [&](std::size_t cb, std::size_t ce) {
    for (std::size_t c = cb; c < ce; ++c) {
      const std::size_t begin = c * chunk_len;
      const std::size_t end = std::min(n, begin + chunk_len);
      Best local;
      for (std::size_t i = begin; i < end; ++i) {
        const double v = evaluate_candidate(u, candidates[i], cfg.discord_opt);
        if (!local.valid || v > local.value ||
            (v == local.value && candidate_less(candidates[i], candidates[local.index]))) {
          local = Best{v, i, true};
        }
      }
      chunk_best[c] = local;
    }
  });

  Best best;
  for (const Best& b : chunk_best) {
    if (!b.valid) continue;
    if (!best.valid || b.value > best.value ||
        (b.value == best.value && candidate_less(candidates[b.index], candidates[best.index]))) {
      best = b;
    }
  }

  PowerResult result;
  result.gate = gate;
  result.mu = mu;
  result.evaluations = n;
  Candidate winner = candidates[best.index];
  double dp = best.value;

  if (cfg.refine) {
    const auto probs = winner.probs;
    const auto nm = nelder_mead(
        [&](const std::vector<double>& x) {
          Candidate c;
          c.angles = {x[0], x[1], x[2], x[3]};
          c.probs = probs;
          return -evaluate_candidate(u, c, cfg.discord_opt);
        },
        {winner.angles[0], winner.angles[1], winner.angles[2], winner.angles[3]},
        {0.5 * cfg.basis_step, 0.5 * cfg.basis_step, 0.5 * cfg.basis_step, 0.5 * cfg.basis_step},
        1e-7, 400);
    result.evaluations += static_cast<std::size_t>(nm.evaluations);
    if (-nm.value > dp) {
      dp = -nm.value;
      winner.angles = {nm.x[0], nm.x[1], nm.x[2], nm.x[3]};
    }
  }

  result.dp = std::max(dp, 0.0);
  result.achieving = spec_from_candidate(winner);
  return result;
}

std::vector<PowerResult> power_curve(const CartanCoordinates& gate,
                                     std::span<const double> mu_grid,
                                     const PowerSearchConfig& cfg) {
  std::vector<PowerResult> out;
  out.reserve(mu_grid.size());
  for (double mu : mu_grid) {
    PowerSearchConfig point_cfg = cfg;
    point_cfg.mu = mu;
    out.push_back(discording_power(gate, point_cfg));
  }
  return out;
}

std::vector<std::pair<double, double>> angle_sweep(GateFamily family,
                                                   std::span<const double> alpha_grid,
                                                   const PowerSearchConfig& cfg) {
  std::vector<std::pair<double, double>> out;
  out.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    const CartanCoordinates coords =
        (family == GateFamily::x_only) ? CartanCoordinates{alpha, 0.0, 0.0}
                                       : CartanCoordinates{alpha, alpha, 0.0};
    out.emplace_back(alpha, discording_power(coords, cfg).dp);
  }
  return out;
}

PreimageSearchResult preimage_witness(const Mat4& gate, const DensityMatrix& target,
                                      const PowerSearchConfig& cfg) {
  const Mat4 pulled_back = gate.adjoint() * target.matrix() * gate;

  // Frobenius gap between the pulled-back state and its dephasing in the
  // product basis given by the four angles; zero exactly on classical states.
  auto distance = [&pulled_back](const std::array<double, 4>& angles) {
    const Mat2 basis_a = bloch_basis(angles[0], angles[1]);
    const Mat2 basis_b = bloch_basis(angles[2], angles[3]);
    Mat4 dephased;
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) {
        std::array<Complex, 4> v{};
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) v[2 * i + j] = basis_a(i, r) * basis_b(j, s);
        Complex weight = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j)
            weight += std::conj(v[i]) * pulled_back(i, j) * v[j];
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j)
            dephased(i, j) += weight * v[i] * std::conj(v[j]);
      }
    return frobenius_distance(pulled_back, dephased);
  };

  const int theta_points = static_cast<int>(std::round(kPi / cfg.basis_step)) + 1;
  const int phi_points = static_cast<int>(std::round(2.0 * kPi / cfg.basis_step));

  std::array<double, 4> best_angles{};
  double best_distance = 1e300;
  for (int ta = 0; ta < theta_points; ++ta)
    for (int pa = 0; pa < phi_points; ++pa)
      for (int tb = 0; tb < theta_points; ++tb)
        for (int pb = 0; pb < phi_points; ++pb) {
          const std::array<double, 4> angles = {cfg.basis_step * ta, cfg.basis_step * pa,
                                                cfg.basis_step * tb, cfg.basis_step * pb};
          const double dist = distance(angles);
          if (dist < best_distance) {
            best_distance = dist;
            best_angles = angles;
          }
        }

  const auto nm = nelder_mead(
      [&](const std::vector<double>& x) {
        return distance({x[0], x[1], x[2], x[3]});
      },
      {best_angles[0], best_angles[1], best_angles[2], best_angles[3]},
      {0.5 * cfg.basis_step, 0.5 * cfg.basis_step, 0.5 * cfg.basis_step, 0.5 * cfg.basis_step},
      1e-10, 500);
  if (nm.value < best_distance) {
    best_distance = nm.value;
    best_angles = {nm.x[0], nm.x[1], nm.x[2], nm.x[3]};
  }

  PreimageSearchResult result;
  result.distance = best_distance;
  if (best_distance <= 1e-6) {
    result.found = true;
    ClassicalStateSpec spec;
    spec.basis_a = bloch_basis(best_angles[0], best_angles[1]);
    spec.basis_b = bloch_basis(best_angles[2], best_angles[3]);
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) {
        std::array<Complex, 4> v{};
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) v[2 * i + j] = spec.basis_a(i, r) * spec.basis_b(j, s);
        Complex weight = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j)
            weight += std::conj(v[i]) * pulled_back(i, j) * v[j];
        spec.probs[2 * r + s] = std::max(0.0, weight.real());
      }
    normalize_pattern(spec.probs);
    result.spec = spec;
    return result;
  }

  // No classical preimage at this resolution: report the smallest concurrence
  // of the pulled-back state over pre-gate local rotations. Concurrence is
  // invariant under local unitaries, so the scan is a numerical cross-check
  // of a single entanglement witness value.
  double witness = 1e300;
  const int coarse_theta = 6, coarse_phi = 10;
  for (int ta = 0; ta < coarse_theta; ++ta)
    for (int pa = 0; pa < coarse_phi; ++pa)
      for (int tb = 0; tb < coarse_theta; ++tb)
        for (int pb = 0; pb < coarse_phi; ++pb) {
          const Mat2 ka = bloch_basis(kPi * ta / (coarse_theta - 1),
                                      2.0 * kPi * pa / coarse_phi);
          const Mat2 kb = bloch_basis(kPi * tb / (coarse_theta - 1),
                                      2.0 * kPi * pb / coarse_phi);
          const Mat4 locals = tensor(ka, kb);
          const Mat4 rotated = locals * pulled_back * locals.adjoint();
          witness = std::min(witness, concurrence(DensityMatrix::trusted(rotated)));
        }
  result.witness_concurrence = witness;
  return result;
}

}  // namespace qcorr
