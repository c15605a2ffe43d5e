#include "qcorr/verify.hpp"

#include <cmath>
#include <sstream>

#include "qcorr/discord.hpp"
#include "qcorr/gates.hpp"
#include "qcorr/mdms.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

namespace {

CheckResult check(const std::string& name, double error, double tolerance) {
  return CheckResult{name, error <= tolerance, error, tolerance};
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<CheckResult> identity_checks() {
  std::vector<CheckResult> out;

  // U_c(pi/4,0,0) maps the diagonal Werner-spectrum state onto the Werner
  // state built on (|00> + i|11>)/sqrt 2.
  for (const double w : {-1.0 / 3.0, -0.2, 0.0, 0.5}) {
    const DensityMatrix input = make_classical(classical_preimage_r4(w));
    const DensityMatrix image = apply(cartan_kernel({kPi / 4.0, 0.0, 0.0}), input);
    const double err = frobenius_distance(image.matrix(), werner(w, BellChoice::phi_i).matrix());
    out.push_back(check("cnot_kernel_werner w=" + fmt(w), err, 1e-10));
  }

  // U_c(pi/8,pi/8,gamma) on the sigma_x-rotated Werner-spectrum state gives
  // the Werner state built on (|01> - i|10>)/sqrt 2, for every gamma.
  for (const double w : {-1.0 / 3.0, -0.2, 0.0, 0.5}) {
    for (const double gamma : {0.0, kPi / 8.0}) {
      const DensityMatrix input = make_classical(classical_preimage_r4(w, /*rotated=*/true));
      const DensityMatrix image = apply(cartan_kernel({kPi / 8.0, kPi / 8.0, gamma}), input);
      const double err =
          frobenius_distance(image.matrix(), werner(w, BellChoice::psi_i).matrix());
      out.push_back(
          check("swap_class_werner w=" + fmt(w) + " gamma=" + fmt(gamma), err, 1e-10));
    }
  }

  // U_c(pi/8,pi/8,gamma) on the diagonal rank-family spectrum gives
  // rho(a, b, pi/2), for every gamma.
  const std::pair<double, double> ab_cases[] = {{0.6, 0.2}, {0.8, 0.2}, {0.5, 0.5}};
  for (const auto& [a, b] : ab_cases) {
    for (const double gamma : {0.0, kPi / 8.0}) {
      const DensityMatrix input = make_classical(classical_preimage_r3(a, b));
      const DensityMatrix image = apply(cartan_kernel({kPi / 8.0, kPi / 8.0, gamma}), input);
      const double err =
          frobenius_distance(image.matrix(), rank_family(a, b, kPi / 2.0).matrix());
      out.push_back(check("swap_class_rank_family a=" + fmt(a) + " b=" + fmt(b) +
                              " gamma=" + fmt(gamma),
                          err, 1e-10));
    }
  }

  return out;
}

std::vector<CheckResult> property_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  Rng rng(seed);

  // Bell-state reference values.
  {
    const DensityMatrix bell = bell_projector(BellChoice::phi_plus);
    out.push_back(check("bell_mutual_information", std::abs(mutual_information(bell) - 2.0), 1e-9));
    out.push_back(check("bell_symmetric_discord", std::abs(symmetric_discord(bell) - 1.0), 1e-6));
    out.push_back(check("bell_concurrence", std::abs(concurrence(bell) - 1.0), 1e-9));
  }

  // Classical-classical states carry no discord.
  {
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
      std::array<double, 4> p{};
      double sum = 0.0;
      for (double& v : p) {
        v = rng.uniform_positive();
        sum += v;
      }
      for (double& v : p) v /= sum;
      ClassicalStateSpec spec{p, random_su2(rng), random_su2(rng)};
      worst = std::max(worst, symmetric_discord(make_classical(spec)));
    }
    out.push_back(check("classical_states_zero_discord", worst, 1e-6));
  }

  // Werner closed form against the measurement minimizer.
  {
    double worst = 0.0;
    for (const double w : {-1.0 / 3.0, -0.25, -0.1, 0.2, 0.6, 0.95}) {
      const double numeric = symmetric_discord(werner(w), werner_spectrum(w));
      worst = std::max(worst, std::abs(numeric - werner_symmetric_discord(w)));
    }
    out.push_back(check("werner_closed_form", worst, 1e-7));
  }

  // Rank-2 family: discord and concurrence both equal a.
  {
    double worst_delta = 0.0;
    double worst_conc = 0.0;
    for (const double a : {0.55, 0.7, 0.85}) {
      const DensityMatrix rho = rank_family(a, 1.0 - a, 0.0);
      worst_delta = std::max(
          worst_delta,
          std::abs(symmetric_discord(rho, rank_family_spectrum(a, 1.0 - a)) - a));
      worst_conc = std::max(worst_conc, std::abs(concurrence(rho) - a));
    }
    out.push_back(check("rank2_discord_equals_a", worst_delta, 2e-3));
    out.push_back(check("rank2_concurrence_equals_a", worst_conc, 1e-9));
  }

  // Coordinate extraction: chamber membership and invariance under local
  // dressing, checked on random kernels.
  {
    double worst = 0.0;
    bool chamber_ok = true;
    for (int i = 0; i < 50; ++i) {
      const CartanCoordinates coords = canonicalize(
          {rng.uniform(0.0, kPi), rng.uniform(0.0, kPi), rng.uniform(0.0, kPi)});
      const Mat4 dressed = tensor(random_su2(rng), random_su2(rng)) * cartan_kernel(coords) *
                           tensor(random_su2(rng), random_su2(rng));
      const CartanCoordinates extracted = canonical_coordinates(dressed);
      worst = std::max({worst, std::abs(extracted.theta_x - coords.theta_x),
                        std::abs(extracted.theta_y - coords.theta_y),
                        std::abs(extracted.theta_z - coords.theta_z)});
      chamber_ok = chamber_ok && extracted.theta_z >= -1e-9 &&
                   extracted.theta_z <= extracted.theta_y + 1e-9 &&
                   extracted.theta_y <= extracted.theta_x + 1e-9 &&
                   extracted.theta_x <= kPi / 4.0 + 1e-9;
    }
    out.push_back(check("coordinate_extraction_local_invariance", worst, 1e-6));
    out.push_back(check("coordinate_chamber_membership", chamber_ok ? 0.0 : 1.0, 0.5));
  }

  // Kernel unitarity across the catalog.
  {
    double worst = 0.0;
    for (const char* name : {"identity", "cnot", "swap", "sqrt_swap", "cz", "iswap"}) {
      worst = std::max(worst, unitarity_defect(named_gate(name).matrix));
    }
    out.push_back(check("named_gate_unitarity", worst, 1e-10));
  }

  return out;
}

}  // namespace qcorr
