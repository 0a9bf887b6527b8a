#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "annulus/solver_config.hpp"

namespace annulus::cli {

struct Check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

/// Runs the named suites (all when empty) with the given fault setting.
std::vector<Check> run_suites(const std::vector<std::string>& suites, FaultInjection fault);

nlohmann::json report_json(const std::vector<Check>& checks, FaultInjection fault);

}  // namespace annulus::cli
