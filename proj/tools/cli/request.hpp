#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annulus/material.hpp"
#include "annulus/solver_config.hpp"

namespace annulus::cli {

enum class Command { solve, rcirc, energy, sweep, verify };
enum class OutputFormat { csv, json };

std::string_view to_string(Command c);
std::string_view to_string(OutputFormat f);

struct RunRequest {
  Command command = Command::solve;
  int n = 2;
  double R = 2.0;
  std::optional<double> R_star;
  std::string phi = "quad:a=0,b=0,kappa=1";
  double rel_tol = SolverConfig{}.rel_tol;
  double abs_tol = SolverConfig{}.abs_tol;
  double root_tol = SolverConfig{}.root_tol;
  int nodes = SolverConfig{}.profile_nodes;
  std::optional<std::string> output;
  OutputFormat format = OutputFormat::csv;

  // sweep
  std::vector<double> kappas;
  double R_min = 1.1;
  double R_max = 5.0;
  double R_step = 0.1;

  // energy
  int oracle_nodes = 0;

  // verify
  std::vector<std::string> suites;
  bool inject_wrong_sign = false;

  SolverConfig config() const;
  bool operator==(const RunRequest&) const = default;
};

/// Thrown for malformed requests; maps to exit code 1.
class RequestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Carries the help text for `--help`; maps to exit code 0.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `command [options]`. The program name is not included.
RunRequest parse_request(const std::vector<std::string>& args);
RunRequest parse_request(const std::string& command_line);

/// Splits on whitespace; double quotes group, backslash escapes inside them.
std::vector<std::string> tokenize(const std::string& line);

/// Canonical command line: every option spelled out, numbers in shortest
/// round-trip form, energy spec normalized.
std::string format_request(const RunRequest& r);

/// Stored energy from `quad:a=..,b=..,kappa=..`, `poly:c0,c1,...` or `xlogx:c=..`.
StoredEnergy parse_phi(const std::string& spec);

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"quadratic", "residual", "comparison", "energy",
                                          "shooting"};
  return s;
}

}  // namespace annulus::cli
