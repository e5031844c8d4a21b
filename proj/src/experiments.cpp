#include "entsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "entsim/perturbation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entsim {

std::string_view curve_measure_name(CurveMeasure m) {
  switch (m) {
    case kConcurrence: return "C";
    case kNegativity: return "N";
    case kLambdaMin: return "lambda_min";
    case kTheta: return "theta";
    case kEof: return "eof";
  }
  return "?";
}

namespace {

constexpr double kThreshold[kCurveMeasureCount] = {0.0, 0.0, 0.0, 1.0, 0.0};
constexpr bool kExtremumIsMax[kCurveMeasureCount] = {true, true, false, true,
                                                     true};

std::vector<double> tau_grid(double tau_max, double dtau) {
  const int count = static_cast<int>(std::ceil(tau_max / dtau - 1e-12)) + 1;
  std::vector<double> tau(count);
  for (int k = 0; k < count; ++k) tau[k] = k * dtau;
  return tau;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  validate(config.ham);
  if (config.separation < 1 || config.separation > 3)
    throw std::invalid_argument("separation must be 1, 2 or 3");
  if (config.separation >= config.ham.n)
    throw std::invalid_argument("separation too large for the chain");
  if (config.samples < 1)
    throw std::invalid_argument("at least one trajectory required");
  if (config.tau_max <= 0 || config.dtau <= 0 || config.dtau > config.tau_max)
    throw std::invalid_argument("bad tau grid");
  if (config.tolerance <= 0)
    throw std::invalid_argument("tolerance must be positive");
}

std::optional<double> first_crossing(const std::vector<double>& tau,
                                     const double* values, int count,
                                     double threshold, bool extremum_is_max) {
  if (count < 2) return std::nullopt;
  int m = 0;
  for (int k = 1; k < count; ++k) {
    if (extremum_is_max ? values[k] > values[m] : values[k] < values[m]) m = k;
  }
  // A curve that never leaves the threshold side has nothing to cross.
  const double dm = values[m] - threshold;
  if (extremum_is_max ? dm <= 0.0 : dm >= 0.0) return std::nullopt;
  for (int k = m; k + 1 < count; ++k) {
    const double d0 = values[k] - threshold;
    const double d1 = values[k + 1] - threshold;
    if (d1 == 0.0) return tau[k + 1];
    if (d0 * d1 < 0.0)
      return tau[k] + (tau[k + 1] - tau[k]) * (-d0) / (d1 - d0);
  }
  return std::nullopt;
}

std::array<CrossingStats, kCurveMeasureCount> crossing_times(
    const EnsembleCurve& curve) {
  std::array<CrossingStats, kCurveMeasureCount> out;
  const int count = static_cast<int>(curve.tau.size());
  for (int m = 0; m < kCurveMeasureCount; ++m) {
    CrossingStats& cs = out[m];
    cs.tau_star = first_crossing(curve.tau, curve.series[m].mean.data(), count,
                                 kThreshold[m], kExtremumIsMax[m]);
    double sum = 0.0;
    for (int t = 0; t < curve.trajectories[m].rows(); ++t) {
      const Eigen::VectorXd vals = curve.trajectories[m].row(t);
      const std::optional<double> c =
          first_crossing(curve.tau, vals.data(), count, kThreshold[m],
                         kExtremumIsMax[m]);
      if (c) {
        sum += *c;
        ++cs.crossed;
      } else {
        ++cs.not_crossed;
      }
    }
    if (cs.crossed > 0) cs.tau_bar_star = sum / cs.crossed;
  }
  return out;
}

EnsembleCurve run_ensemble(const ExperimentConfig& config) {
  validate(config);
  const int n = config.ham.n;
  const QubitPair pair = middle_pair(n, config.separation);
  const double delta_bar = reference_abs_delta(config.ham.model);

  EnsembleCurve curve;
  curve.tau = tau_grid(config.tau_max, config.dtau);
  curve.sample_count = config.samples;
  curve.abs_delta_bar = delta_bar;
  curve.pair = pair;
  const int grid = static_cast<int>(curve.tau.size());
  for (auto& m : curve.trajectories) m.setZero(config.samples, grid);

  const bool redraw_bonds = config.ham.model == Model::TwoBodyRandom;
  std::vector<BondOperator> shared_bonds;
  if (!redraw_bonds) shared_bonds = build_bonds(config.ham);

  PropagationConfig prop_cfg;
  prop_cfg.tolerance = config.tolerance;

  std::atomic<bool> failed{false};
  std::string error;
#pragma omp parallel for schedule(dynamic)
  for (int traj = 0; traj < config.samples; ++traj) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      RandomStream rng =
          RandomStream::substream(config.master_seed, std::uint64_t(traj));
      // Draw order: bond matrix (two-body random only), then initial state.
      std::vector<BondOperator> bonds =
          redraw_bonds ? build_bonds(config.ham, rng) : shared_bonds;
      PureState psi = build_initial_state(config.initial, n, pair, rng);
      Propagator prop(std::move(bonds), n, prop_cfg);
      for (int k = 0; k < grid; ++k) {
        if (k > 0)
          prop.advance(psi, (curve.tau[k] - curve.tau[k - 1]) / delta_bar);
        const EntanglementReport rep = analyze(reduced_density_matrix(psi, pair));
        curve.trajectories[kConcurrence](traj, k) = rep.concurrence;
        curve.trajectories[kNegativity](traj, k) = rep.negativity;
        curve.trajectories[kLambdaMin](traj, k) = rep.lambda_min_pt;
        curve.trajectories[kTheta](traj, k) = rep.theta;
        curve.trajectories[kEof](traj, k) = rep.eof;
      }
    } catch (const std::exception& e) {
#pragma omp critical
      {
        if (!failed.exchange(true))
          error = "trajectory " + std::to_string(traj) + ": " + e.what();
      }
    }
  }
  if (failed.load()) throw EvolutionError(error);

  for (int m = 0; m < kCurveMeasureCount; ++m) {
    auto& s = curve.series[m];
    s.mean.resize(grid);
    s.se.resize(grid);
    const auto& t = curve.trajectories[m];
    for (int k = 0; k < grid; ++k) {
      const double mean = t.col(k).mean();
      s.mean[k] = mean;
      if (config.samples > 1) {
        const double ss = (t.col(k).array() - mean).square().sum();
        s.se[k] = std::sqrt(ss / (config.samples - 1) / config.samples);
      } else {
        s.se[k] = 0.0;
      }
    }
  }
  curve.crossings = crossing_times(curve);
  return curve;
}

RationalFitResult rational_fit_residual(const EnsembleCurve& curve) {
  RationalFitResult res;
  const auto& mean = curve.series[kTheta].mean;
  res.residuals.resize(mean.size());
  for (std::size_t k = 0; k < mean.size(); ++k) {
    const double tau = curve.tau[k];
    const double fit = (1.0 + 4.0 * tau) / (1.0 + 6.0 * tau * tau);
    res.residuals[k] = mean[k] - fit;
    res.max_residual = std::max(res.max_residual, std::abs(res.residuals[k]));
  }
  return res;
}

InitialStateComparison initial_state_comparison(const HamiltonianSpec& spec,
                                                int samples, double tau_max,
                                                double dtau,
                                                std::uint64_t seed) {
  if (spec.model != Model::TwoBodyRandom)
    throw std::invalid_argument(
        "initial-state comparison is defined for the two-body random model");
  const auto run = [&](InitialStateKind kind, std::uint64_t salt) {
    ExperimentConfig cfg;
    cfg.ham = spec;
    cfg.initial = kind;
    cfg.samples = samples;
    cfg.tau_max = tau_max;
    cfg.dtau = dtau;
    std::uint64_t s = seed ^ (salt * 0x9e3779b97f4a7c15ull);
    cfg.master_seed = splitmix64_next(s);
    return run_ensemble(cfg);
  };
  InitialStateComparison cmp{
      run(InitialStateKind::EnvRandomPairProduct, 1),
      run(InitialStateKind::RandomProduct, 2),
      run(InitialStateKind::HomogeneousZero, 3),
  };
  return cmp;
}

}  // namespace entsim
