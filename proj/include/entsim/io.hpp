#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "entsim/experiments.hpp"
#include "entsim/measures.hpp"

namespace entsim {

inline constexpr std::string_view kVersion = "0.1.0";

inline constexpr std::string_view kCurveCsvHeader =
    "tau,mean_C,se_C,mean_N,se_N,mean_lambda_min,se_lambda_min,"
    "mean_theta,se_theta,mean_eof,se_eof";

/// Shortest round-trip decimal rendering (17 significant digits).
std::string format_double(double v);

void write_curve_csv(const std::string& path, const EnsembleCurve& curve);

struct CurveTable {
  std::vector<double> tau;
  std::vector<double> mean_theta;
  std::vector<double> mean_concurrence;
};
CurveTable read_curve_csv(const std::string& path);

void write_spacing_csv(const std::string& path, const SpacingHistogram& h);

nlohmann::json report_to_json(const EntanglementReport& rep);
nlohmann::json crossings_to_json(const EnsembleCurve& curve);

/// Parses a 4x4 complex matrix from JSON: row-major list of 16 [re, im]
/// pairs, or a 4x4 nested list of pairs.
Eigen::Matrix4cd parse_density_json(const nlohmann::json& j);

/// Companion metadata written next to every output file.
struct RunManifest {
  std::string subcommand;
  nlohmann::json config;
  std::uint64_t master_seed = 0;
  double duration_ms = 0.0;
  std::vector<std::string> outputs;
  nlohmann::json results;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace entsim
