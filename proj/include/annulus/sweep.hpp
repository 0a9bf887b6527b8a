#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "annulus/energy.hpp"
#include "annulus/solver_config.hpp"

namespace annulus {

struct SweepRow {
  double kappa = 0.0;
  double R = 0.0;
  double r_circ = 0.0;
  /// "ok", or the failure message for this cell.
  std::string status = "ok";
  bool ok() const { return status == "ok"; }
};

/// Critical radius by lambda = 0 shooting for Phi = kappa^2 d^2 on every
/// (kappa, R) cell. Rows come back sorted by (kappa, R).
std::vector<SweepRow> sweep_critical_radius(int n, std::span<const double> kappas,
                                            std::span<const double> radii,
                                            const SolverConfig& config = {});

/// Single-threaded reference for sweep_critical_radius.
std::vector<SweepRow> sweep_critical_radius_serial(int n, std::span<const double> kappas,
                                                   std::span<const double> radii,
                                                   const SolverConfig& config = {});

/// R_lo, R_lo + step, ... up to R_hi (inclusive within step/1e6).
std::vector<double> radius_range(double lo, double hi, double step);

/// Energies of `count` competitors obtained by perturbing the log-increment
/// coordinates `y` with N(0, sigma^2) noise. Competitor i draws from its own
/// generator seeded by seed + i, so the result does not depend on scheduling.
std::vector<double> competitor_energies(const DiscreteEnergy& energy,
                                        std::span<const double> y, std::size_t count,
                                        double sigma, std::uint64_t seed);

std::vector<double> competitor_energies_serial(const DiscreteEnergy& energy,
                                               std::span<const double> y,
                                               std::size_t count, double sigma,
                                               std::uint64_t seed);

}  // namespace annulus
