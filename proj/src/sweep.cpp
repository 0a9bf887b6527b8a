#include "annulus/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "annulus/solver.hpp"

namespace annulus {

namespace {

SweepRow sweep_cell(int n, double kappa, double R, const SolverConfig& config) {
  SweepRow row;
  row.kappa = kappa;
  row.R = R;
  try {
    row.r_circ = critical_radius(n, StoredEnergy::quadratic(0.0, 0.0, kappa), R, config);
  } catch (const std::exception& e) {
    row.r_circ = std::nan("");
    row.status = e.what();
  }
  return row;
}

std::vector<std::pair<double, double>> cells(std::span<const double> kappas,
                                             std::span<const double> radii) {
  std::vector<double> k(kappas.begin(), kappas.end());
  std::vector<double> r(radii.begin(), radii.end());
  std::sort(k.begin(), k.end());
  std::sort(r.begin(), r.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(k.size() * r.size());
  for (double kk : k)
    for (double rr : r) out.emplace_back(kk, rr);
  return out;
}

std::vector<double> perturbed(std::span<const double> y, double sigma, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> z(y.begin(), y.end());
  for (double& v : z) v += noise(gen);
  return z;
}

}  // namespace

std::vector<SweepRow> sweep_critical_radius(int n, std::span<const double> kappas,
                                            std::span<const double> radii,
                                            const SolverConfig& config) {
  config.validate();
  const auto grid = cells(kappas, radii);
  std::vector<SweepRow> rows(grid.size());
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    rows[i] = sweep_cell(n, grid[i].first, grid[i].second, config);
  return rows;
}

std::vector<SweepRow> sweep_critical_radius_serial(int n, std::span<const double> kappas,
                                                   std::span<const double> radii,
                                                   const SolverConfig& config) {
  config.validate();
  std::vector<SweepRow> rows;
  for (const auto& [k, r] : cells(kappas, radii)) rows.push_back(sweep_cell(n, k, r, config));
  return rows;
}

std::vector<double> radius_range(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw InvalidArgument("radius range needs step > 0 and hi >= lo");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-6));
  for (std::size_t i = 0; i <= count; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

std::vector<double> competitor_energies(const DiscreteEnergy& energy,
                                        std::span<const double> y, std::size_t count,
                                        double sigma, std::uint64_t seed) {
  std::vector<double> out(count);
  const auto m = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i)
    out[i] = energy.energy(perturbed(y, sigma, seed + static_cast<std::uint64_t>(i)));
  return out;
}

std::vector<double> competitor_energies_serial(const DiscreteEnergy& energy,
                                               std::span<const double> y,
                                               std::size_t count, double sigma,
                                               std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(energy.energy(perturbed(y, sigma, seed + i)));
  return out;
}

}  // namespace annulus
