#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "entsim/evolution.hpp"
#include "entsim/hamiltonian.hpp"
#include "entsim/measures.hpp"
#include "entsim/qstate.hpp"

namespace entsim {

/// Curve measures, in the order used by every per-measure array.
enum CurveMeasure : int {
  kConcurrence = 0,
  kNegativity = 1,
  kLambdaMin = 2,
  kTheta = 3,
  kEof = 4,
};
inline constexpr int kCurveMeasureCount = 5;
std::string_view curve_measure_name(CurveMeasure m);

struct ExperimentConfig {
  HamiltonianSpec ham;
  int separation = 1;  ///< chain distance r between the observed pair
  InitialStateKind initial = InitialStateKind::RandomProduct;
  int samples = 200;
  double tau_max = 1.5;
  double dtau = 0.05;
  std::uint64_t master_seed = 0;
  double tolerance = 1e-6;  ///< propagation tolerance per unit time
};

void validate(const ExperimentConfig& config);

/// Crossing summary of one measure through its separability threshold
/// (0 for concurrence/negativity/lambda_min/eof, 1 for theta).
struct CrossingStats {
  std::optional<double> tau_star;      ///< averaged-curve crossing
  std::optional<double> tau_bar_star;  ///< mean of per-trajectory crossings
  int crossed = 0;
  int not_crossed = 0;
};

struct EnsembleCurve {
  std::vector<double> tau;
  struct Series {
    std::vector<double> mean;
    std::vector<double> se;
  };
  std::array<Series, kCurveMeasureCount> series;
  std::array<CrossingStats, kCurveMeasureCount> crossings;
  /// trajectory-by-grid values, kept for per-trajectory statistics
  std::array<Eigen::MatrixXd, kCurveMeasureCount> trajectories;
  int sample_count = 0;
  double abs_delta_bar = 1.0;  ///< rescale constant: t = tau / abs_delta_bar
  QubitPair pair;
};

/// Runs `config.samples` trajectories: fresh initial state per trajectory
/// (and a fresh bond matrix for TwoBodyRandom), incremental propagation
/// across the tau grid, full measure set of the centered pair at each node.
/// Deterministic for fixed master_seed regardless of thread count
/// (per-trajectory streams are RandomStream::substream(master_seed, index)).
EnsembleCurve run_ensemble(const ExperimentConfig& config);

/// First crossing of `values` through `threshold` after the curve extremum
/// (maximum if `extremum_is_max`, else minimum), linearly interpolated.
std::optional<double> first_crossing(const std::vector<double>& tau,
                                     const double* values, int count,
                                     double threshold, bool extremum_is_max);

/// Recomputes all crossing statistics of a curve (also done by
/// run_ensemble).
std::array<CrossingStats, kCurveMeasureCount> crossing_times(
    const EnsembleCurve& curve);

struct RationalFitResult {
  double max_residual = 0.0;
  std::vector<double> residuals;  ///< per grid point
};

/// Deviation of the averaged theta curve from (1 + 4 tau)/(1 + 6 tau^2).
RationalFitResult rational_fit_residual(const EnsembleCurve& curve);

struct InitialStateComparison {
  EnsembleCurve env_random;      ///< EnvRandomPairProduct
  EnsembleCurve random_product;  ///< RandomProduct
  EnsembleCurve homogeneous;     ///< HomogeneousZero
};

/// The three initial-state variants under the two-body random model.
InitialStateComparison initial_state_comparison(const HamiltonianSpec& spec,
                                                int samples, double tau_max,
                                                double dtau,
                                                std::uint64_t seed);

// ---------------------------------------------------------------------------
// Level-spacing statistics
// ---------------------------------------------------------------------------

enum class SectorKind {
  Full,     ///< whole spectrum, no symmetry resolution
  SzZero,   ///< total-sigma^z = 0 magnetization block (n even)
  Reflect,  ///< spatial-reflection symmetric block
};

std::string_view sector_name(SectorKind s);
std::optional<SectorKind> sector_from_name(std::string_view name);

struct SpacingHistogram {
  std::vector<double> spacings;  ///< unfolded, unit mean
  std::vector<double> bin_centers;
  std::vector<double> empirical_density;
  std::vector<double> wigner_dyson_density;
  double kolmogorov_distance = 0.0;
  int levels_total = 0;
  int levels_kept = 0;
  int unfold_degree = 10;
};

double wigner_dyson_density(double s);
double wigner_dyson_cdf(double s);

/// Dense-diagonalizes the requested symmetry block (n <= 12), discards 10%
/// of levels at each spectral edge, unfolds with a polynomial fit of
/// `unfold_degree` to the integrated density and histograms consecutive
/// spacings normalized to unit mean.
SpacingHistogram level_spacing_histogram(const HamiltonianSpec& spec,
                                         SectorKind sector, int bins,
                                         int unfold_degree = 10);

}  // namespace entsim
