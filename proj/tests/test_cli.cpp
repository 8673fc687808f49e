#include "fraclap/cli.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/field.hpp"
#include "fraclap/io.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <sstream>
#include <vector>

using namespace fraclap;
using namespace fraclap::cli;
namespace fs = std::filesystem;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "fraclap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "fraclap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fraclap_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("branch flags") {
    const RunConfig c = parse({"branch", "--s", "0.5", "--k", "1", "--f", "u2"});
    CHECK(c.command == Command::kBranch);
    CHECK(c.s == 0.5);
    CHECK(c.k == 1);
    CHECK(c.nonlinearity == "u2");
  }

  TEST_CASE("out-of-range order cites 0 < s < 1") {
    CHECK_THROWS_WITH_AS(parse({"branch", "--s", "1.0"}), doctest::Contains("0 < s < 1"), PreconditionError);
  }

  TEST_CASE("supercritical exponent cites the bound") {
    CHECK_THROWS_WITH_AS(parse({"solve-variational", "--s", "0.25", "--p", "3"}),
                         doctest::Contains("p < (1+2s)/(1-2s) = 3"), PreconditionError);
    CHECK_THROWS_WITH_AS(parse({"solve", "variational", "--s", "0.25", "--p", "3"}), doctest::Contains("[variational]"),
                         PreconditionError);
  }

  TEST_CASE("unknown flags and missing subcommands are rejected") {
    CHECK_THROWS_AS(parse({"branch", "--bogus", "1"}), PreconditionError);
    CHECK_THROWS_AS(parse({}), PreconditionError);
    CHECK_THROWS_AS(parse({"kernel"}), PreconditionError);
  }

  TEST_CASE("help prints the full grammar") {
    try {
      parse({"--help"});
      FAIL("expected help");
    } catch (const HelpRequested& h) {
      for (const char* word : {"kernel", "dump", "verify-all", "solve", "--seed", "--config"})
        CHECK(h.text.find(word) != std::string::npos);
    }
  }

  TEST_CASE("JSON config with flag override") {
    const fs::path cfg = scratch("config.json");
    io::write_atomic(cfg, R"({"s": 0.3, "k": 2, "f": "u3", "max-points": 12})");
    const RunConfig c = parse({"branch", "--config", cfg.string(), "--k", "3"});
    CHECK(c.s == doctest::Approx(0.3));
    CHECK(c.k == 3);
    CHECK(c.max_points == 12);
    io::write_atomic(cfg, R"({"s": 0.3, "no-such-key": 1})");
    CHECK_THROWS_AS(parse({"branch", "--config", cfg.string()}), PreconditionError);
  }

  TEST_CASE("outputs are byte-identical across runs") {
    const fs::path a = scratch("branch_a.csv"), b = scratch("branch_b.csv");
    REQUIRE(invoke({"branch", "--s", "0.5", "--k", "1", "--f", "u3", "--modes", "32", "--out", a.string()}) == 0);
    REQUIRE(invoke({"branch", "--s", "0.5", "--k", "1", "--f", "u3", "--modes", "32", "--out", b.string()}) == 0);
    const std::string ca = io::read_file(a);
    CHECK(ca == io::read_file(b));
    CHECK(ca.rfind("lambda,amplitude,period,residual\n", 0) == 0);
  }

  TEST_CASE("kernel dump and operator round trip") {
    const fs::path table = scratch("kernel.csv");
    REQUIRE(invoke({"kernel", "dump", "--s", "0.5", "--n", "64", "--out", table.string()}) == 0);
    CHECK(io::read_file(table).rfind("z,H,err_bound\n", 0) == 0);

    const fs::path in = scratch("field.json"), out_spec = scratch("lu_spec.json"), out_quad = scratch("lu_quad.json");
    io::write_atomic(in, to_json(SpectralField::cosine(8, 3) + SpectralField::sine(8, 1, 0.5)).dump());
    REQUIRE(invoke({"op", "apply", "--backend", "spectral", "--s", "0.5", "--in", in.string(), "--out", out_spec.string()}) == 0);
    REQUIRE(invoke({"op", "apply", "--backend", "quadrature", "--s", "0.5", "--n", "256", "--in", in.string(), "--out",
                    out_quad.string()}) == 0);
    const SpectralField ls = field_from_json(nlohmann::json::parse(io::read_file(out_spec)));
    const SpectralField lq = field_from_json(nlohmann::json::parse(io::read_file(out_quad)));
    CHECK(ls.a(3) == doctest::Approx(3.0));
    CHECK(max_coeff_diff(ls, lq) < 1e-9);
  }

  TEST_CASE("solve linear writes solution and report") {
    const fs::path in = scratch("rhs.json"), u = scratch("u.json"), rep = scratch("report.json");
    io::write_atomic(in, to_json(SpectralField::constant(4, 1.0) + SpectralField::cosine(4, 2)).dump());
    REQUIRE(invoke({"solve", "linear", "--s", "0.5", "--rhs", in.string(), "--out", u.string(), "--report", rep.string(),
                    "--n", "256", "--k-max", "4"}) == 0);
    const auto report = nlohmann::json::parse(io::read_file(rep));
    CHECK(report["eigen"]["passed"] == true);
    CHECK(report["eigen"]["entries"].size() == 5);
    CHECK(report["residual"].get<double>() < 1e-14);
  }

  TEST_CASE("errors name the module") {
    std::string err;
    CHECK(invoke({"solve-variational", "--s", "0.25", "--p", "3"}, nullptr, &err) == 2);
    CHECK(err.find("[variational]") != std::string::npos);
    CHECK(invoke({"op", "apply", "--s", "0.5"}, nullptr, &err) == 2);
    CHECK(err.find("[operator]") != std::string::npos);
  }

  TEST_CASE("verify-all writes a scorecard") {
    const fs::path card = scratch("scorecard.json");
    std::string out;
    REQUIRE(invoke({"verify-all", "--s", "0.5", "--only", "3", "--out", card.string()}, &out) == 0);
    CHECK(out.find("criterion 3: PASS") != std::string::npos);
    const auto j = nlohmann::json::parse(io::read_file(card));
    REQUIRE(j["criteria"].size() == 1);
    for (const char* key : {"criterion_id", "description", "measured", "tolerance", "pass"})
      CHECK(j["criteria"][0].contains(key));
  }

  TEST_CASE("examples run writes per-solution JSON and a summary") {
    const fs::path dir = scratch("examples_odd_plus");
    REQUIRE(invoke({"examples", "run", "--which", "odd-plus", "--s", "0.5", "--p", "3", "--out-dir", dir.string()}) == 0);
    const std::string summary = io::read_file(dir / "summary.csv");
    CHECK(summary.rfind("family,s,p,name,period,amplitude,residual\n", 0) == 0);
    CHECK(fs::exists(dir / "odd-plus_u1.json"));
    CHECK(fs::exists(dir / "odd-plus_u2.json"));
  }
}
