#include "request.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace annulus::cli {

namespace {

double parse_number(std::string_view text, const std::string& spec) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto r = std::from_chars(text.data(), end, x);
  if (text.empty() || r.ec != std::errc() || r.ptr != end)
    throw RequestError("bad number '" + std::string(text) + "' in energy spec '" + spec + "'");
  return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::map<std::string, double> keyed(std::string_view body, const std::string& spec,
                                    std::initializer_list<const char*> allowed) {
  std::map<std::string, double> out;
  if (body.empty()) return out;
  for (auto item : split(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw RequestError("expected key=value in energy spec '" + spec + "'");
    std::string key(item.substr(0, eq));
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw RequestError("unknown key '" + key + "' in energy spec '" + spec + "'");
    if (!out.emplace(key, parse_number(item.substr(eq + 1), spec)).second)
      throw RequestError("duplicate key '" + key + "' in energy spec '" + spec + "'");
  }
  return out;
}

double get_or(const std::map<std::string, double>& m, const char* key, double fallback) {
  const auto it = m.find(key);
  return it == m.end() ? fallback : it->second;
}

std::string quoted(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\"'\\") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void add_tolerances(CLI::App* sub, RunRequest& r) {
  sub->add_option("--rel-tol", r.rel_tol, "integrator relative tolerance");
  sub->add_option("--abs-tol", r.abs_tol, "integrator absolute tolerance");
  sub->add_option("--root-tol", r.root_tol, "shooting tolerance on |P(lambda) - R*|");
  sub->add_option("--nodes", r.nodes, "profile sample count on [1, R]");
}

void add_problem(CLI::App* sub, RunRequest& r) {
  sub->add_option("--n", r.n, "dimension")->required();
  sub->add_option("--R", r.R, "outer radius of the source annulus (inner radius 1)")->required();
  sub->add_option("--phi", r.phi, "stored energy: quad:a=,b=,kappa= | poly:c0,c1,.. | xlogx:c=")
      ->required();
}

const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::csv},
                                                   {"json", OutputFormat::json}};

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::rcirc: return "rcirc";
    case Command::energy: return "energy";
    case Command::sweep: return "sweep";
    case Command::verify: return "verify";
  }
  return "solve";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

SolverConfig RunRequest::config() const {
  SolverConfig c;
  c.rel_tol = rel_tol;
  c.abs_tol = abs_tol;
  c.root_tol = root_tol;
  c.profile_nodes = nodes;
  if (inject_wrong_sign) c.fault = FaultInjection::flipped_aux_sign;
  return c;
}

StoredEnergy parse_phi(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string_view body =
      colon == std::string::npos ? std::string_view{} : std::string_view(spec).substr(colon + 1);
  try {
    if (kind == "quad") {
      const auto m = keyed(body, spec, {"a", "b", "kappa"});
      if (!m.count("kappa")) throw RequestError("quad energy spec needs kappa");
      return make_quadratic(get_or(m, "a", 0.0), get_or(m, "b", 0.0), m.at("kappa"));
    }
    if (kind == "poly") {
      if (body.empty()) throw RequestError("poly energy spec needs coefficients");
      std::vector<double> c;
      for (auto item : split(body, ',')) c.push_back(parse_number(item, spec));
      auto phi = StoredEnergy::polynomial(std::move(c));
      const auto report = validate_energy(phi);
      if (!report.positivity.empty() || !report.convexity.empty())
        throw RequestError("poly energy '" + spec + "' is not positive and convex on d > 0");
      return phi;
    }
    if (kind == "xlogx") {
      const auto m = keyed(body, spec, {"c"});
      return StoredEnergy::xlogx(get_or(m, "c", 1.0));
    }
  } catch (const InvalidArgument& e) {
    throw RequestError(e.what());
  }
  throw RequestError("unknown energy kind '" + kind + "' (expected quad, poly or xlogx)");
}

RunRequest parse_request(const std::vector<std::string>& args) {
  RunRequest r;
  CLI::App app{"Minimal neohookean radial deformations of annuli", "annulus"};
  app.require_subcommand(1, 1);
  std::string format = "csv";
  std::string fault;
  double R_star = 0.0;

  auto* solve = app.add_subcommand("solve", "shoot for the radial minimizer onto 1 < |y| < R*");
  add_problem(solve, r);
  solve->add_option("--Rstar", R_star, "target outer radius")->required();
  add_tolerances(solve, r);
  solve->add_option("--out", r.output, "profile artifact path");
  solve->add_option("--format", format, "profile artifact format")->check(CLI::IsMember({"csv", "json"}));

  auto* rcirc = app.add_subcommand("rcirc", "critical outer radius below which no minimizer exists");
  add_problem(rcirc, r);
  add_tolerances(rcirc, r);
  rcirc->add_option("--out", r.output, "JSON report path");

  auto* energy = app.add_subcommand("energy", "energy of the shooting solution");
  add_problem(energy, r);
  energy->add_option("--Rstar", R_star, "target outer radius")->required();
  add_tolerances(energy, r);
  energy->add_option("--oracle-nodes", r.oracle_nodes,
                     "interior nodes of the discrete minimizer cross-check (0 = off)");
  energy->add_option("--out", r.output, "JSON report path");

  auto* sweep = app.add_subcommand("sweep", "critical radius over a (kappa, R) grid, Phi = kappa^2 d^2");
  sweep->add_option("--n", r.n, "dimension")->required();
  sweep->add_option("--kappas", r.kappas, "comma-separated kappa values")->delimiter(',');
  sweep->add_option("--R-min", r.R_min, "first R");
  sweep->add_option("--R-max", r.R_max, "last R");
  sweep->add_option("--R-step", r.R_step, "R increment");
  add_tolerances(sweep, r);
  sweep->add_option("--out", r.output, "table path");
  sweep->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));

  auto* verify = app.add_subcommand("verify", "run the cross-check suites");
  verify->add_option("--suite", r.suites, "restrict to these suites (repeatable)")
      ->check(CLI::IsMember(all_suites()));
  verify->add_option("--inject-fault", fault, "negative control")->check(CLI::IsMember({"wrong-sign"}));
  verify->add_option("--out", r.output, "JSON report path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    app.exit(e, help, help);
    throw HelpRequested(help.str());
  } catch (const CLI::ParseError& e) {
    throw RequestError(e.what());
  }

  if (solve->parsed()) r.command = Command::solve;
  if (rcirc->parsed()) r.command = Command::rcirc;
  if (energy->parsed()) r.command = Command::energy;
  if (sweep->parsed()) r.command = Command::sweep;
  if (verify->parsed()) r.command = Command::verify;
  if (solve->parsed() || energy->parsed()) r.R_star = R_star;
  r.format = kFormats.at(format);
  r.inject_wrong_sign = fault == "wrong-sign";

  if (r.command != Command::verify) {
    if (r.n < 2) throw RequestError("--n must be >= 2");
    if (!(r.rel_tol > 0.0) || !(r.abs_tol > 0.0) || !(r.root_tol > 0.0))
      throw RequestError("tolerances must be positive");
    if (r.nodes < 5) throw RequestError("--nodes must be >= 5");
  }
  if (r.command == Command::sweep) {
    if (r.kappas.empty()) throw RequestError("sweep needs a nonempty --kappas list");
    for (double k : r.kappas)
      if (!(k > 0.0)) throw RequestError("sweep kappas must be positive");
    if (!(r.R_min > 1.0) || !(r.R_max >= r.R_min) || !(r.R_step > 0.0))
      throw RequestError("sweep needs 1 < R-min <= R-max and R-step > 0");
  } else if (r.command != Command::verify) {
    if (!(r.R > 1.0)) throw RequestError("--R must exceed 1");
    if (r.R_star && !(*r.R_star > 1.0)) throw RequestError("--Rstar must exceed 1");
    r.phi = parse_phi(r.phi).name();
  }
  if (r.oracle_nodes < 0) throw RequestError("--oracle-nodes must be >= 0");
  return r;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_token = false, in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '\\' && i + 1 < line.size()) {
        cur += line[++i];
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = in_token = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_token) out.push_back(std::move(cur));
      cur.clear();
      in_token = false;
    } else {
      cur += c;
      in_token = true;
    }
  }
  if (in_quotes) throw RequestError("unterminated quote in command line");
  if (in_token) out.push_back(std::move(cur));
  return out;
}

RunRequest parse_request(const std::string& command_line) {
  return parse_request(tokenize(command_line));
}

std::string format_request(const RunRequest& r) {
  std::ostringstream os;
  os << to_string(r.command);
  auto num = [&](const char* flag, double x) { os << ' ' << flag << ' ' << format_real(x); };
  auto tolerances = [&] {
    num("--rel-tol", r.rel_tol);
    num("--abs-tol", r.abs_tol);
    num("--root-tol", r.root_tol);
    os << " --nodes " << r.nodes;
  };
  switch (r.command) {
    case Command::solve:
    case Command::rcirc:
    case Command::energy:
      os << " --n " << r.n;
      num("--R", r.R);
      if (r.R_star && r.command != Command::rcirc) num("--Rstar", *r.R_star);
      os << " --phi " << quoted(r.phi);
      tolerances();
      if (r.command == Command::energy) os << " --oracle-nodes " << r.oracle_nodes;
      if (r.command == Command::solve) os << " --format " << to_string(r.format);
      break;
    case Command::sweep: {
      os << " --n " << r.n << " --kappas ";
      for (std::size_t i = 0; i < r.kappas.size(); ++i) os << (i ? "," : "") << format_real(r.kappas[i]);
      num("--R-min", r.R_min);
      num("--R-max", r.R_max);
      num("--R-step", r.R_step);
      tolerances();
      os << " --format " << to_string(r.format);
      break;
    }
    case Command::verify:
      for (const auto& s : r.suites) os << " --suite " << s;
      if (r.inject_wrong_sign) os << " --inject-fault wrong-sign";
      break;
  }
  if (r.output) os << " --out " << quoted(*r.output);
  return os.str();
}

}  // namespace annulus::cli
