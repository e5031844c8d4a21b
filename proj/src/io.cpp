#include "entsim/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace entsim {

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, buf + len);
}

void write_curve_csv(const std::string& path, const EnsembleCurve& curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << kCurveCsvHeader << "\n";
  const int grid = static_cast<int>(curve.tau.size());
  for (int k = 0; k < grid; ++k) {
    out << format_double(curve.tau[k]);
    for (int m : {kConcurrence, kNegativity, kLambdaMin, kTheta, kEof}) {
      out << ',' << format_double(curve.series[m].mean[k]) << ','
          << format_double(curve.series[m].se[k]);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

CurveTable read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  if (line.ends_with('\r')) line.pop_back();
  std::vector<std::string> columns;
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) columns.push_back(col);
  }
  int tau_col = -1, theta_col = -1, c_col = -1;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == "tau") tau_col = static_cast<int>(i);
    if (columns[i] == "mean_theta") theta_col = static_cast<int>(i);
    if (columns[i] == "mean_C") c_col = static_cast<int>(i);
  }
  if (tau_col < 0 || theta_col < 0)
    throw std::runtime_error("curve csv needs tau and mean_theta columns");

  CurveTable table;
  while (std::getline(in, line)) {
    if (line.ends_with('\r')) line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc{})
        throw std::runtime_error("bad number in " + path + ": " + cell);
      row.push_back(v);
    }
    if (static_cast<int>(row.size()) <= std::max(tau_col, theta_col))
      throw std::runtime_error("short row in " + path);
    table.tau.push_back(row[tau_col]);
    table.mean_theta.push_back(row[theta_col]);
    if (c_col >= 0 && c_col < static_cast<int>(row.size()))
      table.mean_concurrence.push_back(row[c_col]);
  }
  return table;
}

void write_spacing_csv(const std::string& path, const SpacingHistogram& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "s,empirical_density,wigner_dyson_density\n";
  for (std::size_t b = 0; b < h.bin_centers.size(); ++b) {
    out << format_double(h.bin_centers[b]) << ','
        << format_double(h.empirical_density[b]) << ','
        << format_double(h.wigner_dyson_density[b]) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

nlohmann::json report_to_json(const EntanglementReport& rep) {
  return nlohmann::json{
      {"negativity", rep.negativity},
      {"lambda_min_pt", rep.lambda_min_pt},
      {"concurrence", rep.concurrence},
      {"eof", rep.eof},
      {"theta", rep.theta},
      {"fully_entangled_fraction", rep.fef},
      {"h_fef", rep.h_fef},
      {"distillable", rep.distillable},
  };
}

namespace {

nlohmann::json crossing_json(const CrossingStats& cs) {
  nlohmann::json j;
  j["tau_star"] = cs.tau_star ? nlohmann::json(*cs.tau_star)
                              : nlohmann::json("not reached");
  j["tau_bar_star"] = cs.tau_bar_star ? nlohmann::json(*cs.tau_bar_star)
                                      : nlohmann::json("not reached");
  j["crossed"] = cs.crossed;
  j["not_crossed"] = cs.not_crossed;
  return j;
}

}  // namespace

nlohmann::json crossings_to_json(const EnsembleCurve& curve) {
  nlohmann::json j;
  for (int m = 0; m < kCurveMeasureCount; ++m)
    j[std::string(curve_measure_name(static_cast<CurveMeasure>(m)))] =
        crossing_json(curve.crossings[m]);
  return j;
}

Eigen::Matrix4cd parse_density_json(const nlohmann::json& j) {
  const auto entry = [](const nlohmann::json& e) -> cx {
    if (!e.is_array() || e.size() != 2)
      throw std::runtime_error("matrix entries must be [re, im] pairs");
    return {e[0].get<double>(), e[1].get<double>()};
  };
  Eigen::Matrix4cd m;
  if (j.is_array() && j.size() == 16) {
    for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = entry(j[k]);
    return m;
  }
  if (j.is_array() && j.size() == 4) {
    for (int r = 0; r < 4; ++r) {
      if (!j[r].is_array() || j[r].size() != 4)
        throw std::runtime_error("expected 4 rows of 4 entries");
      for (int c = 0; c < 4; ++c) m(r, c) = entry(j[r][c]);
    }
    return m;
  }
  throw std::runtime_error(
      "density JSON must be a row-major list of 16 [re, im] pairs "
      "or a 4x4 nested list");
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json j;
  j["subcommand"] = manifest.subcommand;
  j["version"] = std::string(kVersion);
  j["config"] = manifest.config;
  j["master_seed"] = manifest.master_seed;
  j["duration_ms"] = manifest.duration_ms;
  j["outputs"] = manifest.outputs;
  j["results"] = manifest.results;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace entsim
