#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pstnet/cli.hpp"
#include "pstnet/serialization.hpp"

using namespace pstnet;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pstnet_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

}  // namespace

TEST_CASE("spectrum") {
  const auto dir = scratch("spectrum");
  const auto r = invoke({"--output-dir", dir.string(), "spectrum", "--n", "8", "--profile", "uniform:C=1,R=3"});
  REQUIRE(r.code == cli::kExitOk);
  const auto h = read_json(dir / "spectrum_histogram.json");
  CHECK(h["distinct"] == 3);
  CHECK(h["total"] == 8);
  const auto csv = slurp(dir / "spectrum.csv");
  CHECK(csv.rfind("p,lambda_p\n0,6\n", 0) == 0);
}

TEST_CASE("pst-check") {
  const auto dir = scratch("pst");
  auto r = invoke({"pst-check", "--output-dir", dir.string(), "--n", "8", "--profile", "uniform:C=1,R=3"});
  REQUIRE(r.code == cli::kExitOk);
  auto j = read_json(dir / "pst_check.json");
  CHECK(j["is_pst"] == true);
  CHECK(j["target"] == 5);
  CHECK(j["z_pst"].get<double>() == doctest::Approx(std::numbers::pi / 2));

  r = invoke({"pst-check", "--output-dir", dir.string(), "--n", "10", "--profile", "uniform:C=1,R=4"});
  REQUIRE(r.code == cli::kExitOk);
  j = read_json(dir / "pst_check.json");
  CHECK(j["is_pst"] == false);
  CHECK(j["transfer_at_zpst"].get<double>() == doctest::Approx(0.64));

  CHECK(invoke({"pst-check", "--output-dir", dir.string(), "--n", "9", "--profile", "uniform:C=1,R=4"}).code ==
        cli::kExitDomain);
}

TEST_CASE("transport, cat and tmsv") {
  const auto dir = scratch("misc");
  REQUIRE(invoke({"--output-dir", dir.string(), "transport", "--n", "8", "--profile", "uniform:C=1,R=3",
                  "--z-max", "pi/2", "--dz", "pi/200"})
              .code == cli::kExitOk);
  const auto t = read_json(dir / "transport.json");
  CHECK(t["samples"] == 101);
  CHECK(t["modes"][4]["max_probability"].get<double>() == doctest::Approx(1.0));

  REQUIRE(invoke({"--output-dir", dir.string(), "cat", "--n", "12", "--profile", "uniform:C=1,R=5", "--alpha",
                  "0.7071067811865476", "--phi", "pi/2", "--dz", "0.01"})
              .code == cli::kExitOk);
  const auto c = read_json(dir / "cat.json");
  CHECK(c["target"] == 7);
  CHECK(c["fidelity_at_zpst"].get<double>() == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
  CHECK(c["max_fidelity"].get<double>() == doctest::Approx(0.36).epsilon(0.15));
  CHECK(invoke({"--output-dir", dir.string(), "cat", "--n", "12", "--profile", "uniform:C=1,R=5", "--alpha", "0",
                "--phi", "pi"})
            .code == cli::kExitDomain);

  REQUIRE(invoke({"--output-dir", dir.string(), "tmsv", "--n", "8", "--profile", "uniform:C=1,R=3", "--dz", "pi/100"})
              .code == cli::kExitOk);
  const auto csv = slurp(dir / "tmsv.csv");
  CHECK(csv.rfind("z,S_Q_12,S_P_12,S_Q_56,S_P_56\n", 0) == 0);
  const auto tj = read_json(dir / "tmsv.json");
  CHECK(tj.dump().find("-0.41421") != std::string::npos);
}

TEST_CASE("evanescent and synth") {
  const auto dir = scratch("evan");
  REQUIRE(invoke({"--output-dir", dir.string(), "evanescent", "--mu", "0.524", "--range", "6", "--z-max", "400"})
              .code == cli::kExitOk);
  const auto e = read_json(dir / "evanescent.json");
  CHECK(std::abs(e["max_transfer"].get<double>() - 0.96) < 0.02);
  CHECK(invoke({"--output-dir", dir.string(), "evanescent", "--mu", "1.5"}).code == cli::kExitDomain);

  REQUIRE(invoke({"--output-dir", dir.string(), "synth", "--n", "8", "--m", "4"}).code == cli::kExitOk);
  const auto s = read_json(dir / "synth.json");
  CHECK(s["pst_report"]["is_pst"] == true);
  CHECK(s["physical"]["dispersive_violation"] == false);

  CHECK(invoke({"--output-dir", dir.string(), "synth", "--n", "8", "--m", "2"}).code == cli::kExitDomain);
  const auto refused = read_json(dir / "synth.json");
  CHECK(refused["feasible"] == false);
  CHECK(refused["pst_report"].is_null());
}

TEST_CASE("usage errors") {
  const auto dir = scratch("usage");
  const auto out = dir.string();
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
  CHECK(invoke({"--output-dir", out, "spectrum", "--n", "8"}).code == cli::kExitUsage);
  CHECK(invoke({"--output-dir", out, "spectrum", "--n", "8", "--profile", "wobbly:C=1"}).code == cli::kExitUsage);
  CHECK(invoke({"--output-dir", out, "pst-check", "--n", "8", "--profile", "uniform:C=1,R=3", "--source", "9"})
            .code == cli::kExitUsage);
  CHECK(invoke({"--output-dir", out, "transport", "--n", "8", "--profile", "uniform:C=1,R=3", "--z-max", "lots"})
            .code == cli::kExitUsage);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
}

TEST_CASE("config file, flag precedence and output directory variable") {
  const auto dir = scratch("config");
  const auto cfg = dir / "net.cfg";
  std::ofstream(cfg) << "# ring\nn = 8\nprofile = uniform:C=1,R=3  # collapse\n";
  const auto flags = cli::read_config_flags(cfg.string());
  CHECK(flags == std::vector<std::string>{"--n", "8", "--profile", "uniform:C=1,R=3"});

  REQUIRE(invoke({"--config", cfg.string(), "--output-dir", dir.string(), "pst-check"}).code == cli::kExitOk);
  CHECK(read_json(dir / "pst_check.json")["n_modes"] == 8);

  REQUIRE(invoke({"--output-dir", dir.string(), "pst-check", "--config", cfg.string(), "--n", "6", "--profile",
                  "uniform:C=1,R=2"})
              .code == cli::kExitOk);
  CHECK(read_json(dir / "pst_check.json")["n_modes"] == 6);

  CHECK(invoke({"--config", (dir / "missing.cfg").string(), "pst-check"}).code == cli::kExitUsage);

  const auto env_dir = dir / "from_env";
  ::setenv(cli::kOutputDirEnv, env_dir.string().c_str(), 1);
  const auto r = invoke({"spectrum", "--n", "4", "--profile", "uniform:C=1,R=1"});
  ::unsetenv(cli::kOutputDirEnv);
  REQUIRE(r.code == cli::kExitOk);
  CHECK(fs::exists(env_dir / "spectrum.csv"));
}

TEST_CASE("outputs are deterministic") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  for (const auto& d : {a, b}) {
    REQUIRE(invoke({"--output-dir", d.string(), "cat", "--n", "8", "--profile", "evanescent:mu=0.5,R=4", "--alpha",
                    "1", "--phi", "pi/2", "--z-max", "10"})
                .code == cli::kExitOk);
  }
  CHECK(slurp(a / "cat.csv") == slurp(b / "cat.csv"));
  CHECK(slurp(a / "cat.json") == slurp(b / "cat.json"));
}
