#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "annulus/kinematics.hpp"
#include "request.hpp"

namespace annulus::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNoSolution = 2,
  kNonConvergence = 3,
  kVerifyFailure = 4,
};

/// Header `t,H,Hdot,mu,J,density`, 17 significant digits, LF endings.
void write_profile_csv(std::ostream& os, int n, const StoredEnergy& phi,
                       const RadialProfile& profile);
nlohmann::json profile_json(int n, const StoredEnergy& phi, const RadialProfile& profile);

int cmd_solve(const RunRequest& r, std::ostream& out);
int cmd_rcirc(const RunRequest& r, std::ostream& out);
int cmd_energy(const RunRequest& r, std::ostream& out);
int cmd_sweep(const RunRequest& r, std::ostream& out);
int cmd_verify(const RunRequest& r, std::ostream& out);

/// Dispatches on r.command and maps library exceptions to exit codes.
int run(const RunRequest& r, std::ostream& out, std::ostream& err);
/// Parses `args` (without the program name) and runs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace annulus::cli
