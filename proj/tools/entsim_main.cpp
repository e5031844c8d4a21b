#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "entsim/experiments.hpp"
#include "entsim/io.hpp"
#include "entsim/measures.hpp"
#include "entsim/perturbation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace entsim;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

Model parse_model(const std::string& name) {
  const auto m = model_from_name(name);
  if (!m) throw CLI::ValidationError("--model", "unknown model " + name);
  return *m;
}

InitialStateKind parse_initial(const std::string& name) {
  if (name == "product") return InitialStateKind::RandomProduct;
  if (name == "zero") return InitialStateKind::HomogeneousZero;
  if (name == "env-random") return InitialStateKind::EnvRandomPairProduct;
  throw CLI::ValidationError("--initial", "unknown initial state " + name);
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

int run_simulate(const std::string& model_name, int n, int r,
                 const std::string& initial_name, int samples, double tau_max,
                 double dtau, std::uint64_t seed, double tolerance, int threads,
                 const std::string& out_path) {
  set_threads(threads);
  ExperimentConfig cfg;
  cfg.ham.model = parse_model(model_name);
  cfg.ham.n = n;
  cfg.ham.seed = seed;
  cfg.separation = r;
  cfg.initial = parse_initial(initial_name);
  cfg.samples = samples;
  cfg.tau_max = tau_max;
  cfg.dtau = dtau;
  cfg.master_seed = seed;
  cfg.tolerance = tolerance;
  validate(cfg);  // fail before any file is created

  Timer timer;
  const EnsembleCurve curve = run_ensemble(cfg);
  write_curve_csv(out_path, curve);

  RunManifest manifest;
  manifest.subcommand = "simulate";
  manifest.config = {{"model", model_name},     {"n", n},
                     {"r", r},                  {"initial", initial_name},
                     {"samples", samples},      {"tau_max", tau_max},
                     {"dtau", dtau},            {"seed", seed},
                     {"tolerance", tolerance},  {"threads", threads},
                     {"abs_delta_bar", curve.abs_delta_bar},
                     {"pair", {curve.pair.a, curve.pair.b}}};
  manifest.master_seed = seed;
  manifest.duration_ms = timer.ms();
  manifest.outputs = {out_path};
  manifest.results = {{"crossings", crossings_to_json(curve)}};
  write_manifest(out_path + ".manifest.json", manifest);

  std::cout << "wrote " << out_path << "\n";
  const auto& theta_cross = curve.crossings[kTheta];
  if (theta_cross.tau_star)
    std::cout << "theta crosses 1 at tau* = " << *theta_cross.tau_star << "\n";
  return 0;
}

int run_spectrum(const std::string& model_name, int n,
                 const std::string& sector_str, int bins, int degree,
                 std::uint64_t seed, const std::string& out_path) {
  HamiltonianSpec spec{parse_model(model_name), n, seed};
  const auto sector = sector_from_name(sector_str);
  if (!sector)
    throw CLI::ValidationError("--sector", "unknown sector " + sector_str);

  Timer timer;
  const SpacingHistogram hist =
      level_spacing_histogram(spec, *sector, bins, degree);
  write_spacing_csv(out_path, hist);

  RunManifest manifest;
  manifest.subcommand = "spectrum";
  manifest.config = {{"model", model_name}, {"n", n},
                     {"sector", sector_str}, {"bins", bins},
                     {"degree", degree},     {"seed", seed}};
  manifest.master_seed = seed;
  manifest.duration_ms = timer.ms();
  manifest.outputs = {out_path};
  manifest.results = {{"kolmogorov_distance", hist.kolmogorov_distance},
                      {"levels_total", hist.levels_total},
                      {"levels_kept", hist.levels_kept}};
  write_manifest(out_path + ".manifest.json", manifest);

  std::cout << "kolmogorov_distance = " << format_double(hist.kolmogorov_distance)
            << " (" << hist.levels_kept << " of " << hist.levels_total
            << " levels)\n";
  return 0;
}

int run_measures(const std::string& rho_path) {
  std::ifstream in(rho_path);
  if (!in) throw std::runtime_error("cannot open " + rho_path);
  nlohmann::json j;
  in >> j;
  const Eigen::Matrix4cd rho = parse_density_json(j);
  TwoQubitDensity density;
  density.m = rho;
  density.validate();
  const EntanglementReport rep = analyze(density);
  std::cout << report_to_json(rep).dump(2) << "\n";
  return 0;
}

int run_delta(const std::string& model_name, std::int64_t samples,
              std::uint64_t seed) {
  HamiltonianSpec spec{parse_model(model_name), 4, seed};
  RandomStream rng(seed);
  const PerturbationStats stats = mean_abs_delta(spec, samples, rng);
  nlohmann::json j{{"model", model_name},
                   {"samples", stats.sample_count},
                   {"mean_abs_delta", stats.mean_abs_delta},
                   {"std_error", stats.std_error},
                   {"reference", reference_abs_delta(spec.model)}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_fit(const std::string& curve_path) {
  const CurveTable table = read_curve_csv(curve_path);
  double max_residual = 0.0;
  for (std::size_t k = 0; k < table.tau.size(); ++k) {
    const double tau = table.tau[k];
    const double fit = (1.0 + 4.0 * tau) / (1.0 + 6.0 * tau * tau);
    max_residual = std::max(max_residual, std::abs(table.mean_theta[k] - fit));
  }
  nlohmann::json j{{"curve", curve_path},
                   {"points", table.tau.size()},
                   {"max_residual", max_residual}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-chain entanglement evolution toolkit"};
  app.require_subcommand(1);

  std::string model = "tbrm", initial = "product", sector = "sz0", out, rho_path,
              curve_path;
  int n = 12, r = 1, samples = 200, bins = 40, degree = 10, threads = 0;
  double tau_max = 1.5, dtau = 0.05, tolerance = 1e-6;
  std::int64_t delta_samples = 100000;
  std::uint64_t seed = 0;

  auto* sim = app.add_subcommand("simulate", "ensemble-averaged curves");
  sim->add_option("--model", model)->required();
  sim->add_option("--n", n)->required();
  sim->add_option("--r", r);
  sim->add_option("--initial", initial);
  sim->add_option("--samples", samples)->required();
  sim->add_option("--tau-max", tau_max);
  sim->add_option("--dtau", dtau);
  sim->add_option("--seed", seed)->required();
  sim->add_option("--tolerance", tolerance);
  sim->add_option("--threads", threads);
  sim->add_option("--out", out)->required();

  auto* spec = app.add_subcommand("spectrum", "level-spacing statistics");
  spec->add_option("--model", model)->required();
  spec->add_option("--n", n)->required();
  spec->add_option("--sector", sector);
  spec->add_option("--bins", bins);
  spec->add_option("--degree", degree);
  spec->add_option("--seed", seed);
  spec->add_option("--out", out)->required();

  auto* mea = app.add_subcommand("measures", "entanglement report of a 4x4 matrix");
  mea->add_option("--rho", rho_path)->required();

  auto* del = app.add_subcommand("delta", "Monte Carlo growth-rate constant");
  del->add_option("--model", model)->required();
  del->add_option("--samples", delta_samples);
  del->add_option("--seed", seed)->required();

  auto* fit = app.add_subcommand("fit", "rational-curve residual of a theta curve");
  fit->add_option("--curve", curve_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed())
      return run_simulate(model, n, r, initial, samples, tau_max, dtau, seed,
                          tolerance, threads, out);
    if (spec->parsed())
      return run_spectrum(model, n, sector, bins, degree, seed, out);
    if (mea->parsed()) return run_measures(rho_path);
    if (del->parsed()) return run_delta(model, delta_samples, seed);
    if (fit->parsed()) return run_fit(curve_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const entsim::EvolutionError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
