#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/request.hpp"

using namespace annulus;
using namespace annulus::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_line(const std::string& line) {
  std::ostringstream out, err;
  const int code = run(tokenize(line), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("annulus_test_" + name)).string();
}

}  // namespace

TEST_CASE("request round trip") {
  const std::vector<std::string> lines{
      "solve --n 2 --R 2 --Rstar 3 --phi quad:kappa=1",
      "solve --phi poly:1,0.5,0.30 --R 2.5 --n 3 --Rstar 2 --out \"my profile.csv\" --format json",
      "rcirc --n 2 --R 2 --phi xlogx:c=1 --rel-tol 1e-9",
      "energy --n 3 --R 2 --Rstar 2.5 --phi quad:a=1,b=0,kappa=0.5 --oracle-nodes 50",
      "sweep --n 2 --kappas 0.125,0.5,2 --R-min 1.1 --R-max 5 --R-step 0.1",
      "verify --suite quadratic --suite residual --inject-fault wrong-sign",
      "verify"};
  for (const auto& line : lines) {
    const auto r = parse_request(line);
    const auto canon = format_request(r);
    CHECK(parse_request(canon) == r);
    CHECK(format_request(parse_request(canon)) == canon);
  }
  CHECK(format_request(parse_request(lines[0])) ==
        "solve --n 2 --R 2 --Rstar 3 --phi quad:a=0,b=0,kappa=1 --rel-tol 1e-12 --abs-tol "
        "1e-13 --root-tol 1e-10 --nodes 202 --format csv");
  CHECK(parse_request(lines[1]).phi == "poly:1,0.5,0.3");
  CHECK(*parse_request(lines[1]).output == "my profile.csv");
  CHECK(parse_request(lines[5]).config().fault == FaultInjection::flipped_aux_sign);
}

TEST_CASE("malformed requests") {
  for (const char* line : {"", "solve --n 2 --R 2 --phi quad:kappa=1",
                           "solve --n 2 --R 2 --Rstar 3 --phi quad:kappa=-1",
                           "solve --n 2 --R 2 --Rstar 3 --phi quad:kapa=1",
                           "solve --n 2 --R 2 --Rstar 3 --phi cubic:1",
                           "solve --n 2 --R 0.5 --Rstar 3 --phi quad:kappa=1",
                           "solve --n 1 --R 2 --Rstar 3 --phi quad:kappa=1",
                           "rcirc --n 2 --R 2 --phi poly:1,0,-1",
                           "sweep --n 2 --R-min 1.1", "verify --suite nope",
                           "verify --inject-fault other"})
    CHECK_THROWS_AS(parse_request(std::string(line)), RequestError);
  CHECK(run_line("sweep --n 2 --R-min 1.1").code == kInputError);
  CHECK(run_line("solve --n 2 --R 2 --Rstar abc --phi quad:kappa=1").code == kInputError);
  const auto help = run_line("--help");
  CHECK(help.code == kOk);
  CHECK(help.out.find("solve") != std::string::npos);
}

TEST_CASE("tokenizer") {
  CHECK(tokenize("  a  \"b c\" d\\e \"x\\\"y\"") ==
        std::vector<std::string>{"a", "b c", "d\\e", "x\"y"});
  CHECK(tokenize("--out \"\"") == std::vector<std::string>{"--out", ""});
  CHECK_THROWS_AS(tokenize("\"open"), RequestError);
}

TEST_CASE("energy spec parsing") {
  CHECK(parse_phi("quad:kappa=2,a=1").name() == "quad:a=1,b=0,kappa=2");
  CHECK(parse_phi("xlogx").alpha() == 0.0);
  CHECK(parse_phi("poly:1,0,1").kind() == EnergyKind::polynomial);
  CHECK_THROWS_AS(parse_phi("quad:kappa=1,kappa=2"), RequestError);
  CHECK_THROWS_AS(parse_phi("quad:a=-5,kappa=1"), RequestError);
}

TEST_CASE("solve") {
  const auto path = temp_path("identity.csv");
  const auto o = run_line("solve --n 2 --R 2 --Rstar 2 --phi quad:a=0,b=0,kappa=1 --out " + path);
  REQUIRE(o.code == kOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["lambda"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(j["regime"] == "conformal");
  CHECK(j["energy"]["total"].get<double>() == doctest::Approx(4.5));
  const auto csv = slurp(path);
  CHECK(csv.rfind("t,H,Hdot,mu,J,density\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 203);

  const auto no = run_line("solve --n 2 --R 2 --Rstar 1.01 --phi quad:a=0,b=0,kappa=0.001");
  CHECK(no.code == kNoSolution);
  const auto nj = nlohmann::json::parse(no.out);
  CHECK(nj["no_solution"] == true);
  CHECK(std::abs(nj["r_circ"].get<double>() - 1.25) <= 1e-4);

  const auto el = run_line("solve --n 3 --R 2 --Rstar 2.5 --phi quad:a=0,b=0,kappa=1");
  CHECK(el.code == kOk);
  const auto ej = nlohmann::json::parse(el.out);
  CHECK(ej["lambda"].get<double>() > 1.0);
  CHECK(ej["regime"] == "elastic");

  const auto tight = run_line("solve --n 2 --R 2 --Rstar 3 --phi quad:kappa=1 --root-tol 1e-30");
  CHECK(tight.code == kNonConvergence);
  std::remove(path.c_str());
}

TEST_CASE("solve writes identical bytes on repeated runs") {
  const auto a = temp_path("a.csv"), b = temp_path("b.csv");
  REQUIRE(run_line("solve --n 3 --R 2 --Rstar 2.5 --phi quad:kappa=1 --out " + a).code == 0);
  REQUIRE(run_line("solve --n 3 --R 2 --Rstar 2.5 --phi quad:kappa=1 --out " + b).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto j = temp_path("p.json");
  REQUIRE(run_line("solve --n 2 --R 2 --Rstar 3 --phi quad:kappa=1 --format json --out " + j).code == 0);
  CHECK(nlohmann::json::parse(slurp(j))["H"].size() == 202);
  for (const auto& p : {a, b, j}) std::remove(p.c_str());
}

TEST_CASE("rcirc") {
  const auto o = run_line("rcirc --n 2 --R 2 --phi quad:kappa=1");
  REQUIRE(o.code == kOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["gap"].get<double>() <= 1e-6);
  const auto small = nlohmann::json::parse(run_line("rcirc --n 2 --R 2 --phi quad:kappa=0.001").out);
  CHECK(std::abs(small["r_circ"].get<double>() - 1.25) <= 1e-4);
  const auto zero = nlohmann::json::parse(run_line("rcirc --n 3 --R 2 --phi xlogx:c=1").out);
  CHECK(zero["r_circ"] == 1.0);
  CHECK_FALSE(zero.contains("closed_form"));
}

TEST_CASE("energy") {
  const auto o = run_line("energy --n 2 --R 2 --Rstar 3 --phi quad:kappa=1 --oracle-nodes 99");
  REQUIRE(o.code == kOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["oracle"]["sup_profile_gap"].get<double>() <= 1e-3);
  CHECK(j["energy"]["total"].get<double>() > 0);
  CHECK(run_line("energy --n 2 --R 2 --Rstar 1.01 --phi quad:kappa=1").code == kNoSolution);
}

TEST_CASE("sweep") {
  const auto o = run_line("sweep --n 2 --kappas 2,0.5 --R-min 1.5 --R-max 2 --R-step 0.25");
  REQUIRE(o.code == kOk);
  CHECK(o.out.rfind("kappa,R,r_circ,status\n0.5,1.5,", 0) == 0);
  CHECK(std::count(o.out.begin(), o.out.end(), '\n') == 7);
  CHECK(o.out == run_line("sweep --n 2 --kappas 2,0.5 --R-min 1.5 --R-max 2 --R-step 0.25").out);
}

TEST_CASE("verify") {
  const auto ok = run_line("verify --suite quadratic");
  CHECK(ok.code == kOk);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["pass"] == true);
  for (const auto& c : j["checks"])
    CHECK((c["suite"] == "quadratic" || c["suite"] == "integrator"));

  const auto bad = run_line("verify --suite residual --inject-fault wrong-sign");
  CHECK(bad.code == kVerifyFailure);
  const auto bj = nlohmann::json::parse(bad.out);
  CHECK(bj["pass"] == false);
  CHECK(bj["fault"] == "wrong-sign");
}
