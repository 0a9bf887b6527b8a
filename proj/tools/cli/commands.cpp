#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "annulus/energy.hpp"
#include "annulus/euler_lagrange.hpp"
#include "annulus/quadratic.hpp"
#include "annulus/solver.hpp"
#include "annulus/sweep.hpp"
#include "verify.hpp"

namespace annulus::cli {

namespace {

using nlohmann::json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw RequestError("cannot open output file '" + path + "'");
  return f;
}

void emit(const RunRequest& r, std::ostream& out, const json& j) {
  out << j.dump(2) << '\n';
  if (r.output) open_output(*r.output) << j.dump(2) << '\n';
}

AnnulusProblem problem_of(const RunRequest& r) {
  AnnulusProblem p{r.n, r.R, r.R_star, parse_phi(r.phi), r.config()};
  p.validate();
  return p;
}

json energy_json(const EnergyBreakdown& e) {
  return {{"distortion", e.distortion},
          {"volumetric", e.volumetric},
          {"total", e.total},
          {"total_absolute", e.total_absolute},
          {"error_estimate", e.error_estimate}};
}

json no_solution_json(const NoSolution& ns) {
  return {{"no_solution", true}, {"r_circ", ns.r_circ}};
}

std::string csv_field(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

void write_profile_csv(std::ostream& os, int n, const StoredEnergy& phi,
                       const RadialProfile& profile) {
  os << "t,H,Hdot,mu,J,density\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double t = profile.t[i], H = profile.H[i], K = profile.Hdot[i];
    os << g17(t) << ',' << g17(H) << ',' << g17(K) << ',' << g17(elasticity(t, H, K)) << ','
       << g17(jacobian(n, t, H, K)) << ',' << g17(lagrangian_density(n, phi, t, H, K)) << '\n';
  }
}

json profile_json(int n, const StoredEnergy& phi, const RadialProfile& profile) {
  json j;
  for (const char* k : {"t", "H", "Hdot", "mu", "J", "density"}) j[k] = json::array();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double t = profile.t[i], H = profile.H[i], K = profile.Hdot[i];
    j["t"].push_back(t);
    j["H"].push_back(H);
    j["Hdot"].push_back(K);
    j["mu"].push_back(elasticity(t, H, K));
    j["J"].push_back(jacobian(n, t, H, K));
    j["density"].push_back(lagrangian_density(n, phi, t, H, K));
  }
  return j;
}

int cmd_solve(const RunRequest& r, std::ostream& out) {
  const auto problem = problem_of(r);
  const auto result = solve_bvp(problem);
  if (const auto* ns = std::get_if<NoSolution>(&result)) {
    out << no_solution_json(*ns).dump(2) << '\n';
    return kNoSolution;
  }
  const auto& s = std::get<ShootingOutcome>(result);
  json j = {{"phi", r.phi},
            {"n", r.n},
            {"R", r.R},
            {"R_star", *r.R_star},
            {"lambda", s.lambda},
            {"outer_image", s.outer_image},
            {"outer_image_error", s.outer_image_error},
            {"r_circ", s.r_circ},
            {"regime", std::string(to_string(s.profile.regime))},
            {"iterations", s.iterations},
            {"energy", energy_json(s.energy)}};
  out << j.dump(2) << '\n';
  if (r.output) {
    auto f = open_output(*r.output);
    if (r.format == OutputFormat::csv)
      write_profile_csv(f, r.n, problem.phi, s.profile);
    else
      f << profile_json(r.n, problem.phi, s.profile).dump(2) << '\n';
  }
  return kOk;
}

int cmd_rcirc(const RunRequest& r, std::ostream& out) {
  const auto problem = problem_of(r);
  const double rc = critical_radius(r.n, problem.phi, r.R, problem.config);
  json j = {{"phi", r.phi}, {"n", r.n}, {"R", r.R}, {"alpha", problem.phi.alpha()}, {"r_circ", rc}};
  if (r.n == 2 && problem.phi.kind() == EnergyKind::quadratic) {
    const double cf = quadratic::nitsche_bound(problem.phi.kappa(), r.R);
    j["closed_form"] = cf;
    j["gap"] = std::abs(cf - rc);
  }
  emit(r, out, j);
  return kOk;
}

int cmd_energy(const RunRequest& r, std::ostream& out) {
  const auto problem = problem_of(r);
  const auto result = solve_bvp(problem);
  if (const auto* ns = std::get_if<NoSolution>(&result)) {
    out << no_solution_json(*ns).dump(2) << '\n';
    return kNoSolution;
  }
  const auto& s = std::get<ShootingOutcome>(result);
  json j = {{"phi", r.phi},       {"n", r.n},           {"R", r.R},
            {"R_star", *r.R_star}, {"lambda", s.lambda}, {"energy", energy_json(s.energy)}};
  if (r.oracle_nodes > 0) {
    MinimizerOptions opt;
    opt.throw_on_cap = false;
    const auto m = discrete_minimizer(r.n, problem.phi, r.R, *r.R_star,
                                      static_cast<std::size_t>(r.oracle_nodes), opt);
    double gap = 0.0;
    for (std::size_t i = 0; i < m.profile.size(); ++i)
      gap = std::max(gap, std::abs(m.profile.H[i] - s.profile.at(m.profile.t[i]).H));
    j["oracle"] = {{"interior_nodes", r.oracle_nodes},
                   {"energy", m.energy},
                   {"converged", m.converged},
                   {"iterations", m.iterations},
                   {"grad_inf_norm", m.grad_inf_norm},
                   {"sup_profile_gap", gap},
                   {"energy_difference", m.energy - s.energy.total}};
  }
  emit(r, out, j);
  return kOk;
}

int cmd_sweep(const RunRequest& r, std::ostream& out) {
  const auto radii = radius_range(r.R_min, r.R_max, r.R_step);
  const auto rows = sweep_critical_radius(r.n, r.kappas, radii, r.config());
  std::ofstream file;
  if (r.output) file = open_output(*r.output);
  std::ostream& os = r.output ? file : out;
  std::size_t ok = 0;
  if (r.format == OutputFormat::csv) {
    os << "kappa,R,r_circ,status\n";
    for (const auto& row : rows)
      os << g17(row.kappa) << ',' << g17(row.R) << ',' << g17(row.r_circ) << ','
         << csv_field(row.status) << '\n';
  } else {
    json j = json::array();
    for (const auto& row : rows)
      j.push_back({{"kappa", row.kappa}, {"R", row.R}, {"r_circ", row.r_circ}, {"status", row.status}});
    os << j.dump(2) << '\n';
  }
  for (const auto& row : rows) ok += row.ok();
  return ok > 0 ? kOk : kNonConvergence;
}

int cmd_verify(const RunRequest& r, std::ostream& out) {
  const auto fault = r.inject_wrong_sign ? FaultInjection::flipped_aux_sign : FaultInjection::none;
  const auto checks = run_suites(r.suites, fault);
  const auto j = report_json(checks, fault);
  emit(r, out, j);
  return j.at("pass").get<bool>() ? kOk : kVerifyFailure;
}

int run(const RunRequest& r, std::ostream& out, std::ostream& err) {
  try {
    switch (r.command) {
      case Command::solve: return cmd_solve(r, out);
      case Command::rcirc: return cmd_rcirc(r, out);
      case Command::energy: return cmd_energy(r, out);
      case Command::sweep: return cmd_sweep(r, out);
      case Command::verify: return cmd_verify(r, out);
    }
  } catch (const RequestError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunRequest r;
  try {
    r = parse_request(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kOk;
  } catch (const RequestError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return run(r, out, err);
}

}  // namespace annulus::cli
