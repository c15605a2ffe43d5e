#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/discord.hpp"
#include "qcorr/gates.hpp"
#include "qcorr/io.hpp"
#include "qcorr/mdms.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/power.hpp"
#include "qcorr/states.hpp"
#include "qcorr/verify.hpp"

namespace {

constexpr const char* kVersion = "qcorr 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

// Angles are radians, or multiples of pi with a "pi" suffix ("0.25pi", "pi").
// The suffix form takes precedence: a trailing "pi" is always interpreted as
// the multiplier notation.
double parse_angle(const std::string& text) {
  std::string t = text;
  while (!t.empty() && (t.front() == ' ' || t.back() == ' ')) {
    if (t.front() == ' ') t.erase(t.begin());
    if (!t.empty() && t.back() == ' ') t.pop_back();
  }
  double factor = 1.0;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    factor = qcorr::kPi;
    t = t.substr(0, t.size() - 2);
    if (t.empty() || t == "+") t = "1";
    if (t == "-") t = "-1";
  }
  std::size_t used = 0;
  const double value = std::stod(t, &used);
  if (used != t.size()) {
    throw std::invalid_argument("cannot parse angle: " + text);
  }
  return value * factor;
}

qcorr::CartanCoordinates parse_coords(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) {
    throw std::invalid_argument("expected three comma-separated angles");
  }
  return {parse_angle(parts[0]), parse_angle(parts[1]), parse_angle(parts[2])};
}

std::vector<double> parse_grid(const std::string& text) {
  // "start:end:step", inclusive of both ends within a half-step.
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) {
    throw std::invalid_argument("expected start:end:step");
  }
  const double start = parse_angle(parts[0]);
  const double end = parse_angle(parts[1]);
  const double step = parse_angle(parts[2]);
  if (step <= 0.0 || end < start) {
    throw std::invalid_argument("grid requires end >= start and step > 0");
  }
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > end + 0.5 * step) break;
    out.push_back(std::min(v, end));
    if (v >= end) break;
  }
  return out;
}

std::vector<double> linspace(double start, double end, int points) {
  std::vector<double> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) {
    out.push_back(points > 1 ? start + (end - start) * i / (points - 1) : start);
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

// Pretty form for canonical angles: multiples of pi.
std::string format_pi(double v) {
  if (std::abs(v) < 1e-12) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g\xCF\x80", v / qcorr::kPi);
  return buf;
}

struct ManifestInfo {
  std::string subcommand;
  nlohmann::json config;
  std::uint64_t seed = 0;
};

void write_output(const std::string& path, const std::string& csv, const ManifestInfo& info,
                  double wall_seconds) {
  qcorr::write_text_file(path, csv);
  nlohmann::json manifest;
  manifest["subcommand"] = info.subcommand;
  manifest["config"] = info.config;
  manifest["seed"] = info.seed;
  manifest["version"] = kVersion;
  manifest["wall_time_s"] = wall_seconds;
  qcorr::write_text_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int run_discord(const std::string& state_path, const qcorr::OptimizerConfig& opt) {
  const qcorr::DensityMatrix rho = qcorr::read_density_matrix_file(state_path);
  const qcorr::DiscordReport report = qcorr::discord(rho, opt);
  std::printf("purity             = %s\n", format_number(rho.purity()).c_str());
  std::printf("mutual_information = %s\n", format_number(report.mutual_information).c_str());
  std::printf("classical_AB       = %s\n", format_number(report.classical_ab).c_str());
  std::printf("classical_BA       = %s\n", format_number(report.classical_ba).c_str());
  std::printf("discord_AB         = %s\n", format_number(report.discord_ab).c_str());
  std::printf("discord_BA         = %s\n", format_number(report.discord_ba).c_str());
  std::printf("symmetric_discord  = %s\n", format_number(report.symmetric).c_str());
  std::printf("argmin_AB          = theta=%s phi=%s\n",
              format_number(report.argmin_ab.theta).c_str(),
              format_number(report.argmin_ab.phi).c_str());
  std::printf("argmin_BA          = theta=%s phi=%s\n",
              format_number(report.argmin_ba.theta).c_str(),
              format_number(report.argmin_ba.phi).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit quantum-correlation toolkit: discord, Cartan gates, "
               "discording power"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // discord ------------------------------------------------------------
  auto* cmd_discord = app.add_subcommand("discord", "Discord report for a state file");
  std::string state_path;
  qcorr::OptimizerConfig opt_cfg;
  cmd_discord->add_option("--state", state_path, "density-matrix JSON file")->required();
  cmd_discord->add_option("--grid-theta", opt_cfg.grid_theta, "polar grid points");
  cmd_discord->add_option("--grid-phi", opt_cfg.grid_phi, "azimuth grid points");
  cmd_discord->add_option("--nm-tol", opt_cfg.nm_tolerance, "refinement tolerance");

  // gate-info ----------------------------------------------------------
  auto* cmd_gate = app.add_subcommand("gate-info", "Canonical coordinates of a gate");
  std::string gate_named, gate_file, gate_coords;
  cmd_gate->add_option("--named", gate_named, "catalog gate name");
  cmd_gate->add_option("--file", gate_file, "unitary JSON file");
  cmd_gate->add_option("--coords", gate_coords, "theta_x,theta_y,theta_z");

  // power ----------------------------------------------------------------
  auto* cmd_power = app.add_subcommand("power", "Discording power of a gate");
  std::string power_named, power_coords, power_grid, power_out;
  double power_purity = -1.0;
  qcorr::PowerSearchConfig power_cfg;
  std::string preset = "desk";
  cmd_power->add_option("--named", power_named, "catalog gate name");
  cmd_power->add_option("--coords", power_coords, "theta_x,theta_y,theta_z");
  cmd_power->add_option("--purity", power_purity, "single purity value");
  cmd_power->add_option("--purity-grid", power_grid, "start:end:step");
  cmd_power->add_option("--budget", power_cfg.budget, "candidate states per point");
  cmd_power->add_option("--samples", power_cfg.probability_samples, "distribution pool size");
  std::string power_step = "0.1pi";
  cmd_power->add_option("--step", power_step, "basis-angle grid step");
  cmd_power->add_flag_callback("--no-refine", [&power_cfg] { power_cfg.refine = false; },
                               "skip basis-angle refinement");
  cmd_power->add_option("--seed", power_cfg.seed, "search seed");
  cmd_power->add_option("--threads", power_cfg.threads, "worker threads (0 = auto)");
  cmd_power->add_option("--preset", preset, "desk (default) or full (8e6-candidate scan)");
  cmd_power->add_option("--out", power_out, "CSV output path")->required();

  // sweep ----------------------------------------------------------------
  auto* cmd_sweep = app.add_subcommand("sweep", "Power vs kernel angle at fixed purity");
  std::string sweep_family = "a00", sweep_out;
  double sweep_purity = 0.7;
  int sweep_points = 26;
  qcorr::PowerSearchConfig sweep_cfg;
  cmd_sweep->add_option("--family", sweep_family, "a00 for (a,0,0), aa0 for (a,a,0)");
  cmd_sweep->add_option("--purity", sweep_purity, "purity of the classical inputs");
  cmd_sweep->add_option("--points", sweep_points, "alpha grid points on [0, pi/4]");
  cmd_sweep->add_option("--budget", sweep_cfg.budget, "candidate states per point");
  cmd_sweep->add_option("--seed", sweep_cfg.seed, "search seed");
  cmd_sweep->add_option("--threads", sweep_cfg.threads, "worker threads (0 = auto)");
  cmd_sweep->add_option("--out", sweep_out, "CSV output path")->required();

  // boundary ---------------------------------------------------------------
  auto* cmd_boundary = app.add_subcommand("boundary", "Max discord vs purity curve");
  std::string boundary_grid, boundary_out;
  int boundary_points = 40;
  cmd_boundary->add_option("--grid", boundary_grid, "start:end:step purity grid");
  cmd_boundary->add_option("--points", boundary_points, "grid points on [1/4, 1]");
  cmd_boundary->add_option("--out", boundary_out, "CSV output path")->required();

  // cloud --------------------------------------------------------------
  auto* cmd_cloud = app.add_subcommand("cloud", "Random-state discord/purity samples");
  int cloud_rank = 4;
  std::size_t cloud_samples = 1000;
  std::uint64_t cloud_seed = 1;
  std::size_t cloud_threads = 0;
  std::string cloud_out;
  cmd_cloud->add_option("--rank", cloud_rank, "state rank in {1,2,3,4}")->required();
  cmd_cloud->add_option("--samples", cloud_samples, "number of samples")->required();
  cmd_cloud->add_option("--seed", cloud_seed, "sampling seed");
  cmd_cloud->add_option("--threads", cloud_threads, "worker threads (0 = auto)");
  cmd_cloud->add_option("--out", cloud_out, "CSV output path")->required();

  // verify -------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "Identity and property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_discord->parsed()) {
      return run_discord(state_path, opt_cfg);
    }

    if (cmd_gate->parsed()) {
      qcorr::Mat4 u;
      std::string label;
      if (!gate_named.empty()) {
        const auto info = qcorr::named_gate(gate_named);
        u = info.matrix;
        label = info.name;
      } else if (!gate_file.empty()) {
        u = qcorr::read_unitary_file(gate_file);
        label = gate_file;
      } else if (!gate_coords.empty()) {
        u = qcorr::cartan_kernel(parse_coords(gate_coords));
        label = gate_coords;
      } else {
        std::cerr << "gate-info requires one of --named, --file, --coords\n";
        return kExitUsage;
      }
      const auto coords = qcorr::canonical_coordinates(u);
      std::printf("gate: %s\n", label.c_str());
      std::printf("theta = (%s, %s, %s)\n", format_pi(coords.theta_x).c_str(),
                  format_pi(coords.theta_y).c_str(), format_pi(coords.theta_z).c_str());
      std::printf("theta_rad = (%s, %s, %s)\n", format_number(coords.theta_x).c_str(),
                  format_number(coords.theta_y).c_str(), format_number(coords.theta_z).c_str());
      std::printf("unitarity_defect = %s\n", format_number(qcorr::unitarity_defect(u)).c_str());
      return kExitOk;
    }

    if (cmd_power->parsed()) {
      Stopwatch watch;
      if (preset == "full") {
        power_cfg.budget = 8000000;
      } else if (preset != "desk") {
        throw std::invalid_argument("unknown preset: " + preset);
      }
      power_cfg.basis_step = parse_angle(power_step);

      qcorr::CartanCoordinates coords;
      if (!power_named.empty()) {
        coords = qcorr::named_gate(power_named).coords;
      } else if (!power_coords.empty()) {
        coords = parse_coords(power_coords);
      } else {
        std::cerr << "power requires --named or --coords\n";
        return kExitUsage;
      }

      std::vector<double> grid;
      if (!power_grid.empty()) {
        grid = parse_grid(power_grid);
      } else if (power_purity >= 0.0) {
        grid.push_back(power_purity);
      } else {
        std::cerr << "power requires --purity or --purity-grid\n";
        return kExitUsage;
      }

      const auto results = qcorr::power_curve(coords, grid, power_cfg);
      std::string csv = "mu, dp, theta_x, theta_y, theta_z, n_evals\n";
      for (const auto& r : results) {
        csv += format_number(r.mu) + ", " + format_number(r.dp) + ", " +
               format_number(r.gate.theta_x) + ", " + format_number(r.gate.theta_y) + ", " +
               format_number(r.gate.theta_z) + ", " + std::to_string(r.evaluations) + "\n";
      }
      ManifestInfo info;
      info.subcommand = "power";
      info.seed = power_cfg.seed;
      info.config = {{"coords", {coords.theta_x, coords.theta_y, coords.theta_z}},
                     {"purity_grid", grid},
                     {"budget", power_cfg.budget},
                     {"samples", power_cfg.probability_samples},
                     {"step", power_cfg.basis_step},
                     {"refine", power_cfg.refine},
                     {"preset", preset}};
      write_output(power_out, csv, info, watch.seconds());
      return kExitOk;
    }

    if (cmd_sweep->parsed()) {
      Stopwatch watch;
      qcorr::GateFamily family;
      if (sweep_family == "a00") {
        family = qcorr::GateFamily::x_only;
      } else if (sweep_family == "aa0") {
        family = qcorr::GateFamily::xy_equal;
      } else {
        throw std::invalid_argument("unknown family: " + sweep_family + " (use a00 or aa0)");
      }
      sweep_cfg.mu = sweep_purity;
      const auto alphas = linspace(0.0, qcorr::kPi / 4.0, sweep_points);
      const auto results = qcorr::angle_sweep(family, alphas, sweep_cfg);
      std::string csv = "alpha, dp\n";
      for (const auto& [alpha, dp] : results) {
        csv += format_number(alpha) + ", " + format_number(dp) + "\n";
      }
      ManifestInfo info;
      info.subcommand = "sweep";
      info.seed = sweep_cfg.seed;
      info.config = {{"family", sweep_family},
                     {"purity", sweep_purity},
                     {"points", sweep_points},
                     {"budget", sweep_cfg.budget}};
      write_output(sweep_out, csv, info, watch.seconds());
      return kExitOk;
    }

    if (cmd_boundary->parsed()) {
      Stopwatch watch;
      std::vector<double> grid;
      if (!boundary_grid.empty()) {
        grid = parse_grid(boundary_grid);
      } else {
        grid = linspace(0.25, 1.0, boundary_points);
      }
      const auto points = qcorr::boundary_curve(grid);
      std::string csv = "mu, delta_max, branch, a, b, w\n";
      for (const auto& p : points) {
        const char* branch = p.branch == qcorr::BoundaryBranch::R4
                                 ? "R4"
                                 : (p.branch == qcorr::BoundaryBranch::R3 ? "R3" : "R2");
        csv += format_number(p.mu) + ", " + format_number(p.delta_max) + ", " + branch + ", " +
               format_number(p.a) + ", " + format_number(p.b) + ", " + format_number(p.w) + "\n";
      }
      ManifestInfo info;
      info.subcommand = "boundary";
      info.config = {{"grid", grid}};
      write_output(boundary_out, csv, info, watch.seconds());
      return kExitOk;
    }

    if (cmd_cloud->parsed()) {
      Stopwatch watch;
      qcorr::RandomStateConfig cfg{cloud_rank, cloud_samples, cloud_seed};
      const auto states = qcorr::sample_random_states(cfg);
      std::vector<double> purities(states.size());
      std::vector<double> deltas(states.size());
      qcorr::parallel_for_chunks(states.size(), cloud_threads,
                                 [&](std::size_t begin, std::size_t end) {
                                   for (std::size_t i = begin; i < end; ++i) {
                                     purities[i] = states[i].purity();
                                     deltas[i] = qcorr::symmetric_discord(states[i]);
                                   }
                                 });
      std::string csv = "mu, delta\n";
      for (std::size_t i = 0; i < states.size(); ++i) {
        csv += format_number(purities[i]) + ", " + format_number(deltas[i]) + "\n";
      }
      ManifestInfo info;
      info.subcommand = "cloud";
      info.seed = cloud_seed;
      info.config = {{"rank", cloud_rank}, {"samples", cloud_samples}};
      write_output(cloud_out, csv, info, watch.seconds());
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      bool all_pass = true;
      auto print = [&all_pass](const qcorr::CheckResult& r) {
        std::printf("[%s] %s (err %.3e, tol %.3e)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.error, r.tolerance);
        all_pass = all_pass && r.pass;
      };
      for (const auto& r : qcorr::identity_checks()) print(r);
      for (const auto& r : qcorr::property_checks()) print(r);
      if (!all_pass) {
        std::printf("verification FAILED\n");
        return kExitVerification;
      }
      std::printf("all checks passed\n");
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  return kExitUsage;
}
