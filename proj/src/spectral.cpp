#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "entsim/experiments.hpp"

namespace entsim {

std::string_view sector_name(SectorKind s) {
  switch (s) {
    case SectorKind::Full: return "full";
    case SectorKind::SzZero: return "sz0";
    case SectorKind::Reflect: return "reflect";
  }
  return "?";
}

std::optional<SectorKind> sector_from_name(std::string_view name) {
  if (name == "full") return SectorKind::Full;
  if (name == "sz0") return SectorKind::SzZero;
  if (name == "reflect") return SectorKind::Reflect;
  return std::nullopt;
}

double wigner_dyson_density(double s) {
  return 0.5 * M_PI * s * std::exp(-0.25 * M_PI * s * s);
}

double wigner_dyson_cdf(double s) {
  return s <= 0.0 ? 0.0 : 1.0 - std::exp(-0.25 * M_PI * s * s);
}

namespace {

std::uint64_t reverse_bits(std::uint64_t x, int n) {
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i)
    if (x & (std::uint64_t{1} << i)) r |= std::uint64_t{1} << (n - 1 - i);
  return r;
}

/// Orthonormal sector basis: each vector is a weighted set of computational
/// states sharing one coefficient column.
struct SectorBasis {
  // per basis vector: member states and the common weight 1/sqrt(size)
  std::vector<std::vector<std::uint64_t>> members;
  std::vector<int> position_of;  // computational index -> basis row, -1 if absent
};

SectorBasis build_sector(const HamiltonianSpec& spec, SectorKind sector) {
  const int n = spec.n;
  const std::uint64_t dim = std::uint64_t{1} << n;
  SectorBasis basis;
  basis.position_of.assign(dim, -1);

  switch (sector) {
    case SectorKind::Full:
      basis.members.reserve(dim);
      for (std::uint64_t k = 0; k < dim; ++k) {
        basis.position_of[k] = static_cast<int>(basis.members.size());
        basis.members.push_back({k});
      }
      break;
    case SectorKind::SzZero: {
      if (n % 2 != 0)
        throw std::invalid_argument("sz0 sector is empty for odd n");
      for (std::uint64_t k = 0; k < dim; ++k) {
        if (std::popcount(k) != n / 2) continue;
        basis.position_of[k] = static_cast<int>(basis.members.size());
        basis.members.push_back({k});
      }
      break;
    }
    case SectorKind::Reflect: {
      for (std::uint64_t k = 0; k < dim; ++k) {
        const std::uint64_t r = reverse_bits(k, n);
        if (r < k) continue;  // one representative per orbit
        const int pos = static_cast<int>(basis.members.size());
        basis.position_of[k] = pos;
        if (r != k) {
          basis.position_of[r] = pos;
          basis.members.push_back({k, r});
        } else {
          basis.members.push_back({k});
        }
      }
      break;
    }
  }
  if (basis.members.empty()) throw std::invalid_argument("sector is empty");
  return basis;
}

/// H restricted to the sector, assembled column by column from the bond
/// stencils. Requires [H, sector projector] = 0, which is checked through
/// the final Hermiticity assertion.
Eigen::MatrixXcd sector_hamiltonian(const std::vector<BondOperator>& bonds,
                                    int n, const SectorBasis& basis) {
  const std::size_t d = basis.members.size();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const double wj = 1.0 / std::sqrt(double(basis.members[j].size()));
    // H acting on each member state of basis vector j
    for (const std::uint64_t x : basis.members[j]) {
      for (const BondOperator& bond : bonds) {
        const int p = n - 2 - bond.site;
        const int col = static_cast<int>((x >> p) & 3);
        for (int row = 0; row < 4; ++row) {
          const cx amp = bond.matrix(row, col);
          if (std::abs(amp) < 1e-300) continue;
          const std::uint64_t y =
              (x & ~(std::uint64_t{3} << p)) | (std::uint64_t(row) << p);
          const int i = basis.position_of[y];
          if (i < 0)
            throw std::invalid_argument(
                "hamiltonian does not preserve the requested sector");
          const double wi = 1.0 / std::sqrt(double(basis.members[i].size()));
          h(i, j) += wi * wj * amp;
        }
      }
    }
  }
  const double herm_err = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > 1e-9)
    throw std::invalid_argument("sector Hamiltonian is not Hermitian");
  return h;
}

/// Least-squares polynomial fit of the integrated density N(E); the
/// abscissa is mapped to [-1, 1] before building the Vandermonde system.
struct UnfoldingFit {
  double e_lo, e_hi;
  Eigen::VectorXd coeff;

  double operator()(double e) const {
    const double x = (2.0 * e - (e_lo + e_hi)) / (e_hi - e_lo);
    double acc = 0.0;
    for (Eigen::Index k = coeff.size(); k-- > 0;) acc = acc * x + coeff[k];
    return acc;
  }
};

UnfoldingFit fit_integrated_density(const std::vector<double>& levels,
                                    int degree) {
  const int m = static_cast<int>(levels.size());
  UnfoldingFit fit;
  fit.e_lo = levels.front();
  fit.e_hi = levels.back();
  Eigen::MatrixXd vand(m, degree + 1);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const double x =
        (2.0 * levels[i] - (fit.e_lo + fit.e_hi)) / (fit.e_hi - fit.e_lo);
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      vand(i, k) = p;
      p *= x;
    }
    rhs[i] = i + 0.5;  // staircase midpoint
  }
  fit.coeff = vand.householderQr().solve(rhs);
  return fit;
}

}  // namespace

SpacingHistogram level_spacing_histogram(const HamiltonianSpec& spec,
                                         SectorKind sector, int bins,
                                         int unfold_degree) {
  validate(spec);
  if (spec.n > 12)
    throw std::invalid_argument("level statistics limited to n <= 12");
  if (bins < 4) throw std::invalid_argument("need at least 4 bins");
  if (unfold_degree < 1 || unfold_degree > 20)
    throw std::invalid_argument("unfolding degree out of range");

  const std::vector<BondOperator> bonds = build_bonds(spec);
  if (sector == SectorKind::Reflect) {
    // Reflection maps bond i onto bond n-2-i with its two qubits swapped;
    // the bond list must be invariant under that map.
    Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    for (std::size_t i = 0; i < bonds.size(); ++i) {
      const Eigen::Matrix4cd mirrored =
          swap * bonds[bonds.size() - 1 - i].matrix * swap;
      if ((bonds[i].matrix - mirrored).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument(
            "hamiltonian is not reflection symmetric; reflect sector invalid");
    }
  }
  const SectorBasis basis = build_sector(spec, sector);
  const Eigen::MatrixXcd h = sector_hamiltonian(bonds, spec.n, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  std::vector<double> levels(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(levels.begin(), levels.end());

  SpacingHistogram out;
  out.levels_total = static_cast<int>(levels.size());
  out.unfold_degree = unfold_degree;

  // Discard 10% of levels at each spectral edge.
  const int cut = static_cast<int>(levels.size() / 10);
  std::vector<double> kept(levels.begin() + cut, levels.end() - cut);
  out.levels_kept = static_cast<int>(kept.size());
  if (out.levels_kept < unfold_degree + 2)
    throw std::invalid_argument("too few levels for the unfolding fit");

  const UnfoldingFit fit = fit_integrated_density(kept, unfold_degree);
  std::vector<double>& spacings = out.spacings;
  spacings.reserve(kept.size() - 1);
  for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
    const double s = fit(kept[i + 1]) - fit(kept[i]);
    if (s > 0.0) spacings.push_back(s);
  }
  const double mean =
      std::accumulate(spacings.begin(), spacings.end(), 0.0) / spacings.size();
  for (double& s : spacings) s /= mean;

  // Kolmogorov distance of the empirical CDF to the Wigner-Dyson CDF.
  std::vector<double> sorted = spacings;
  std::sort(sorted.begin(), sorted.end());
  double ks = 0.0;
  const double inv = 1.0 / double(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = wigner_dyson_cdf(sorted[i]);
    ks = std::max(ks, std::abs(f - double(i) * inv));
    ks = std::max(ks, std::abs(double(i + 1) * inv - f));
  }
  out.kolmogorov_distance = ks;

  const double s_max = std::max(4.0, sorted.back() * 1.0001);
  const double width = s_max / bins;
  out.bin_centers.resize(bins);
  out.empirical_density.assign(bins, 0.0);
  out.wigner_dyson_density.resize(bins);
  for (double s : spacings) {
    const int b = std::min(bins - 1, static_cast<int>(s / width));
    out.empirical_density[b] += 1.0;
  }
  for (int b = 0; b < bins; ++b) {
    out.bin_centers[b] = (b + 0.5) * width;
    out.empirical_density[b] /= spacings.size() * width;
    out.wigner_dyson_density[b] = wigner_dyson_density(out.bin_centers[b]);
  }
  return out;
}

}  // namespace entsim
