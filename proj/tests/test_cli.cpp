// The command-line front end, driven in-process through run_cli: output
// strings, JSON schemas, the three-way exit-code contract, and the
// DIFFALG_STYLE environment default.

#include <catch2/catch_amalgamated.hpp>

#include <diffalg/cli.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace diffalg;
using nlohmann::json;

namespace {

struct CliResult {
  int rc;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = run_cli(std::move(args), out, err);
  return {rc, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--style", "json"});
  CliResult r = run(std::move(args));
  REQUIRE(r.rc == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("diff prints the differential and exits cleanly", "[cli]") {
  CliResult r = run({"diff", "x^3"});
  CHECK(r.rc == 0);
  CHECK(r.out == "3x^2 dx\n");
  CHECK(r.err.empty());

  CHECK(run({"diff", "x y", "-n", "2"}).out == "x d^2y + y d^2x + 2 dx dy\n");
  CHECK(run({"diff", "5"}).out == "0\n");
  // d(...) on a composite is accepted and resolved before differentiating.
  CHECK(run({"diff", "d(x y)"}).out == "x d^2y + y d^2x + 2 dx dy\n");
}

TEST_CASE("expand prints derivative forms and honors progressions", "[cli]") {
  CHECK(run({"expand", "-d", "y", "-i", "x"}).out == "dy/dx\n");
  CHECK(run({"expand", "-d", "y", "-i", "x", "-n", "2"}).out ==
        "-d^2x dy/dx^3 + d^2y/dx^2\n");
  CHECK(run({"expand", "-d", "y", "-i", "x", "-n", "2", "--progression", "x"}).out ==
        "d^2y/dx^2\n");

  CliResult same = run({"expand", "-d", "y", "-i", "y"});
  CHECK(same.rc == 2);
  CHECK(contains(same.err, "must differ"));
}

TEST_CASE("verify chain2 adjudicates the three candidate values", "[cli]") {
  CliResult r = run({"verify", "chain2"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "24t^4"));
  CHECK(contains(r.out, "30t^4"));
  CHECK(contains(r.out, "naive matches direct:      no"));
  CHECK(contains(r.out, "faa matches direct:        yes"));
  CHECK(contains(r.out, "PASS\n"));

  CliResult custom = run({"verify", "chain2", "--y", "x^2", "--x", "t^3"});
  CHECK(custom.rc == 0);
  CHECK(contains(custom.out, "30t^4"));
}

TEST_CASE("verify inverse prints the swapped derivative and checks involution", "[cli]") {
  CliResult r = run({"verify", "inverse"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "-2/9/x^5"));
  CHECK(contains(r.out, "PASS\n"));

  CHECK(contains(run({"verify", "inverse", "--d2", "2", "--d1", "2x"}).out, "-1/4/x^3"));

  // A zero first derivative is a numeric failure, not a usage error.
  CHECK(run({"verify", "inverse", "--d1", "0"}).rc == 1);
}

TEST_CASE("verify dxdx reports both faces of the subtlety", "[cli]") {
  CliResult r = run({"verify", "dxdx"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "identically zero"));
  CHECK(contains(r.out, "not the zero quotient"));
  CHECK(contains(r.out, "PASS\n"));
}

TEST_CASE("verify expansion-oracle runs the randomized cross-check", "[cli]") {
  CliResult r = run({"verify", "expansion-oracle", "-n", "2", "--trials", "25",
                     "--seed", "7"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "trials:       25"));
  CHECK(contains(r.out, "PASS\n"));
}

TEST_CASE("solve-ode passes on the worked equation with default settings", "[cli]") {
  CliResult r = run({"solve-ode"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "c1 = 1.5"));
  CHECK(contains(r.out, "stopped at slope limit"));
  CHECK(contains(r.out, "PASS\n"));
}

TEST_CASE("solve-ode distinguishes failure kinds by exit code", "[cli]") {
  // Residual exceeds an absurdly tight tolerance: verification failure.
  CliResult tight = run({"solve-ode", "--tol", "1e-12"});
  CHECK(tight.rc == 1);
  CHECK(contains(tight.out, "FAIL\n"));

  // Unrepresentable trajectory: numeric failure.
  CHECK(run({"solve-ode", "--y0", "1e7"}).rc == 1);

  // Bad inputs: usage errors.
  CHECK(run({"solve-ode", "--f", "q"}).rc == 2);
  CHECK(run({"solve-ode", "--yprime0", "0"}).rc == 2);
  CHECK(run({"solve-ode", "--step", "0"}).rc == 2);
}

TEST_CASE("eval computes values along parametrized curves", "[cli]") {
  CHECK(run({"eval", "dy/dx", "--param", "x=t^2,y=t^6", "--at", "2"}).out == "48\n");
  CHECK(run({"eval", "d^2x", "--param", "x=t^3", "--at", "1"}).out == "6\n");
  CHECK(run({"eval", "dx", "--param", "x=t^3", "--at", "1"}).out == "3\n");
  CHECK(run({"eval", "dx", "--param", "x=t^3", "--at", "1", "--dt", "0.5"}).out ==
        "1.5\n");
}

TEST_CASE("eval separates numeric failures from usage errors", "[cli]") {
  CliResult singular = run({"eval", "1/x", "--param", "x=t", "--at", "0"});
  CHECK(singular.rc == 1);
  CHECK(contains(singular.err, "denominator vanishes"));

  CliResult unbound = run({"eval", "dz", "--param", "x=t"});
  CHECK(unbound.rc == 2);
  CHECK(contains(unbound.err, "no parametrization binding"));

  CHECK(run({"eval", "x", "--param", "x"}).rc == 2);
  CHECK(run({"eval", "x", "--param", "x=sin(t)"}).rc == 2);
}

TEST_CASE("malformed expressions exit with code 2 and a source span", "[cli]") {
  CliResult r = run({"diff", "x +"});
  CHECK(r.rc == 2);
  CHECK(contains(r.err, "parse error"));
  CHECK(contains(r.err, "characters"));

  CliResult fn = run({"diff", "foo(x)"});
  CHECK(fn.rc == 2);
  CHECK(contains(fn.err, "unknown function 'foo'"));
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
  CHECK(run({}).rc == 2);                          // no subcommand
  CHECK(run({"diff"}).rc == 2);                    // missing expression
  CHECK(run({"diff", "x", "-n", "0"}).rc == 2);    // order must be positive
  CHECK(run({"diff", "x", "--bogus"}).rc == 2);    // unknown flag
  CHECK(run({"--style", "yaml", "diff", "x"}).rc == 2);
}

TEST_CASE("help is printed on stdout with exit code 0", "[cli]") {
  CliResult r = run({"--help"});
  CHECK(r.rc == 0);
  CHECK(contains(r.out, "diff"));
  CHECK(contains(r.out, "expand"));
  CHECK(contains(r.out, "solve-ode"));
}

TEST_CASE("latex style renders operators and fractions", "[cli]") {
  CHECK(run({"--style", "latex", "diff", "x^3"}).out == "3\\,x^{2}\\,\\mathrm{d}x\n");
  CHECK(contains(run({"--style", "latex", "expand", "-d", "y", "-i", "x", "-n", "2",
                      "--progression", "x"})
                     .out,
                 "\\frac{\\mathrm{d}^{2}y}{\\mathrm{d}x^{2}}"));
}

TEST_CASE("json style emits the documented schema per subcommand", "[cli]") {
  SECTION("diff") {
    json j = run_json({"diff", "x^3"});
    CHECK(j["command"] == "diff");
    CHECK(j["input"] == "x^3");
    CHECK(j["n"] == 1);
    CHECK(j["result"]["plain"] == "3x^2 dx");
    CHECK(j["result"]["latex"].is_string());
  }

  SECTION("expand") {
    json j = run_json({"expand", "-d", "y", "-i", "x", "-n", "2"});
    CHECK(j["command"] == "expand");
    CHECK(j["dependent"] == "y");
    CHECK(j["independent"] == "x");
    CHECK(j["n"] == 2);
    CHECK(j["progression"].is_null());
    CHECK(j["result"]["plain"] == "-d^2x dy/dx^3 + d^2y/dx^2");
    CHECK(j["result"]["numerator"] == "dx d^2y - d^2x dy");
    CHECK(j["result"]["denominator"] == "dx^3");

    json reduced = run_json({"expand", "-d", "y", "-i", "x", "-n", "2",
                             "--progression", "x"});
    CHECK(reduced["progression"] == "x");
    CHECK(reduced["result"]["plain"] == "d^2y/dx^2");
  }

  SECTION("verify chain2") {
    json j = run_json({"verify", "chain2"});
    CHECK(j["command"] == "verify");
    CHECK(j["check"] == "chain2");
    CHECK(j["naive"]["plain"] == "24t^4");
    CHECK(j["direct"]["plain"] == "30t^4");
    CHECK(j["naive_matches_direct"] == false);
    CHECK(j["faa_matches_direct"] == true);
    CHECK(j["full_identity_holds"] == true);
    CHECK(j["passed"] == true);
  }

  SECTION("verify inverse") {
    json j = run_json({"verify", "inverse"});
    CHECK(j["check"] == "inverse");
    CHECK(j["result"]["plain"] == "-2/9/x^5");
    CHECK(j["involution_holds"] == true);
    CHECK(j["passed"] == true);
  }

  SECTION("verify dxdx") {
    json j = run_json({"verify", "dxdx"});
    CHECK(j["check"] == "dxdx");
    CHECK(j["full_form"]["plain"] == "0");
    CHECK(j["bare_ratio"]["plain"] == "d^2x/dx^2");
    CHECK(j["full_form_is_zero"] == true);
    CHECK(j["bare_ratio_is_nonzero"] == true);
    CHECK(j["passed"] == true);
  }

  SECTION("verify expansion-oracle") {
    json j = run_json({"verify", "expansion-oracle", "-n", "2", "--trials", "25",
                       "--seed", "7"});
    CHECK(j["identity"].is_string());
    CHECK(j["trials"] == 25);
    CHECK(j["max_rel_err"].is_number());
    CHECK(j["max_rel_err"].get<double>() <= 1e-9);
    CHECK(j["passed"] == true);
    CHECK_FALSE(j.contains("counterexample"));
  }

  SECTION("solve-ode") {
    json j = run_json({"solve-ode"});
    CHECK(j["command"] == "solve-ode");
    CHECK(j["f"] == "y");
    CHECK(j["implicit_solution"]["plain"].is_string());
    CHECK_THAT(j["constants"]["c1"].get<double>(),
               Catch::Matchers::WithinAbs(1.5, 1e-12));
    CHECK_THAT(j["constants"]["c2"].get<double>(),
               Catch::Matchers::WithinAbs(-4.0 / 3.0, 1e-12));
    CHECK_THAT(j["opposite_branch_constants"]["c1"].get<double>(),
               Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK(j["max_residual_minus_branch"].get<double>() <= 1e-6);
    CHECK(j["max_residual_plus_branch"].get<double>() >= 1e-3);
    CHECK(j["truncated_at_slope_limit"] == true);
    CHECK(j["blowup_x"].is_null());
    CHECK(j["x_reached"].get<double>() < 0.4);
    CHECK(j["passed"] == true);
  }

  SECTION("eval") {
    json j = run_json({"eval", "dy/dx", "--param", "x=t^2,y=t^6", "--at", "2"});
    CHECK(j["command"] == "eval");
    CHECK(j["expr"] == "dy/dx");
    CHECK(j["param"] == "x=t^2,y=t^6");
    CHECK(j["t0"] == 2.0);
    CHECK(j["dt"] == 1.0);
    CHECK(j["value"] == 48.0);
  }
}

TEST_CASE("DIFFALG_STYLE sets the default output style", "[cli]") {
  ::setenv("DIFFALG_STYLE", "latex", 1);
  CHECK(run({"diff", "x^3"}).out == "3\\,x^{2}\\,\\mathrm{d}x\n");
  // An explicit flag wins over the environment.
  CHECK(run({"--style", "plain", "diff", "x^3"}).out == "3x^2 dx\n");
  ::setenv("DIFFALG_STYLE", "bogus", 1);
  CHECK(run({"diff", "x^3"}).rc == 2);
  ::unsetenv("DIFFALG_STYLE");
  CHECK(run({"diff", "x^3"}).out == "3x^2 dx\n");
}
