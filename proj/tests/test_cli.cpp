#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "hardyliou/error.hpp"

using namespace hardyliou;
using io::json;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "hardyliou_test_cli";

fs::path write_config(const std::string& name, const json& cfg) {
  fs::create_directories(kRoot);
  const fs::path p = kRoot / (name + ".json");
  io::write_file(p, cfg.dump(1));
  return p;
}

int run_binary(const std::string& command, const fs::path& config, const fs::path& out,
               const std::string& env = "") {
  const std::string cmd = env + " '" HARDYLIOU_BIN "' " + command + " --config '" + config.string() +
                          "' --out '" + out.string() + "' > '" + (out.string() + ".log") + "' 2>&1";
  fs::create_directories(out.parent_path());
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json report(const fs::path& out, const std::string& command) {
  return json::parse(io::read_file(out / (command + ".json")));
}

}  // namespace

TEST_CASE("config validation collects problems") {
  try {
    cli::parse_config(json::parse(R"({"N": 0, "M": 3, "bogus": 1, "trajectories": ["missing.csv"], "seed": -1})"), kRoot);
    FAIL("expected a config error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(msg.find("N:") != std::string::npos);
    CHECK(msg.find("bogus") != std::string::npos);
    CHECK(msg.find("missing.csv") != std::string::npos);
    CHECK(msg.find("seed") != std::string::npos);
  }
  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"N": 16, "M": 20})"), kRoot), Error);
  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"schema": 2})"), kRoot), Error);
  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"ode": {"z0": 1.5}})"), kRoot), Error);
  const cli::ExperimentConfig ok = cli::parse_config(json::parse(R"({"N": 16, "M": 64, "f": [0, 1], "ode": {"z0": [0.1, 0.2], "T": 2}})"), kRoot);
  CHECK(ok.N == 16);
  CHECK(*ok.M == 64);
  CHECK(ok.flow().T == 2.0);
  CHECK(ok.flow().dt == 1e-3);
  CHECK_THROWS_AS(ok.weight_map(), Error);
}

TEST_CASE("spectrum of A_z") {
  const fs::path out = kRoot / "spectrum";
  CHECK(run_binary("spectrum", write_config("spectrum", {{"schema", 1}, {"N", 32}, {"f", {0, 1}}}), out) == 0);
  const json r = report(out, "spectrum");
  CHECK(r["status"] == "PASS");
  REQUIRE(r["results"]["eigenvalues"].size() == 33);
  for (int n = 0; n <= 32; ++n) CHECK(r["results"]["eigenvalues"][n]["value"][0].get<double>() == n);
  CHECK(fs::exists(out / "spectrum.csv"));
  for (const json& c : r["certificates"]) CHECK(c["formula"].is_string());
}

TEST_CASE("adjoint-check and occupation commands pass") {
  const fs::path out = kRoot / "adjoint";
  CHECK(run_binary("adjoint-check", write_config("adjoint", {{"N", 64}, {"M", 512}, {"f", {1, 1}}}), out) == 0);
  CHECK(report(out, "adjoint-check")["results"]["max_discrepancy"].get<double>() <= 1e-8);

  const fs::path occ = kRoot / "occupation";
  CHECK(run_binary("occupation", write_config("occupation", {{"N", 80}, {"f", {0, 1}}, {"ode", {{"z0", 0.2}, {"T", 1.0}, {"dt", 1e-3}}}}), occ) == 0);
  CHECK(report(occ, "occupation")["results"]["residual"].get<double>() <= 1e-6);
  CHECK(fs::exists(occ / "trajectory.csv"));
}

TEST_CASE("weighted, bounds, hs-norm and smirnov commands pass") {
  const json weighted = {{"N", 80}, {"f", {0, 1}}, {"phi", {0, 0, 1}}, {"ode", {{"z0", 0.2}, {"T", 1.0}}}};
  CHECK(run_binary("weighted", write_config("weighted", weighted), kRoot / "weighted") == 0);
  const json bounded = {{"N", 64}, {"f", {1}}, {"phi", {0, 0.5}}, {"params", {{"expect", "bounded"}, {"blaschke_zeros", {0.5}}}}};
  CHECK(run_binary("bounds", write_config("bounds", bounded), kRoot / "bounds") == 0);
  CHECK(report(kRoot / "bounds", "bounds")["results"]["bound"]["diverges"] == false);
  CHECK(fs::exists(kRoot / "bounds" / "compactness_profile.csv"));
  const json hs = {{"N", 64}, {"M", 1024}, {"f", {1, 1}}, {"phi", {0, 0.5}}};
  CHECK(run_binary("hs-norm", write_config("hs", hs), kRoot / "hs") == 0);
  const json sm = {{"N", 256}, {"M", 1024}, {"f", {2, 1, 0, 0.5}}};
  CHECK(run_binary("smirnov", write_config("smirnov", sm), kRoot / "smirnov") == 0);
}

TEST_CASE("certificate failure exits 1, invalid config exits 2") {
  const json diverging = {{"N", 32}, {"f", {1}}, {"phi", {0, 1}}, {"params", {{"expect", "bounded"}}}};
  CHECK(run_binary("bounds", write_config("diverging", diverging), kRoot / "diverging") == 1);
  CHECK(report(kRoot / "diverging", "bounds")["status"] == "FAIL");
  CHECK(run_binary("spectrum", write_config("bad", {{"N", -3}}), kRoot / "bad") == 2);
  CHECK(run_binary("spectrum", write_config("nof", {{"N", 8}}), kRoot / "nof") == 2);
  io::write_file(kRoot / "broken.json", "{ not json");
  CHECK(run_binary("spectrum", kRoot / "broken.json", kRoot / "broken") == 2);
  CHECK(run_binary("no-such-command", write_config("x", {{"N", 8}}), kRoot / "x") == 2);
}

TEST_CASE("dmd from csv files, deterministic across thread counts") {
  const TaylorPolynomial f({0.1, 0.9});
  json files = json::array();
  for (int k = 0; k < 10; ++k) {
    const Complex z0 = -1.0 / 9.0 + 0.3 * (0.5 + 0.05 * k) * std::polar(1.0, 0.6 * k);
    const std::string name = "traj" + std::to_string(k) + ".csv";
    io::write_trajectory_csv(kRoot / name, integrate_ode(f, z0, 1.0, 1e-3));
    files.push_back(name);
  }
  const json cfg = {{"N", 64},
                    {"f", {0.1, 0.9}},
                    {"trajectories", files},
                    {"params", {{"expected_eigenvalues", {0, 0.9, 1.8}}, {"predict", {{{"z0", 0.3}, {"t", 0.5}}}}}}};
  const fs::path config = write_config("dmd", cfg);
  CHECK(run_binary("dmd", config, kRoot / "dmd1", "HARDYLIOU_THREADS=1") == 0);
  CHECK(run_binary("dmd", config, kRoot / "dmd4", "HARDYLIOU_THREADS=4") == 0);
  CHECK(io::read_file(kRoot / "dmd1" / "dmd.json") == io::read_file(kRoot / "dmd4" / "dmd.json"));
  CHECK(io::read_file(kRoot / "dmd1" / "model.json") == io::read_file(kRoot / "dmd4" / "model.json"));
  const json model = json::parse(io::read_file(kRoot / "dmd1" / "model.json"));
  CHECK(model["trajectory_digests"].size() == 10);
  CHECK(model["trajectory_digests"][0] == io::sha256_hex(io::read_file(kRoot / "traj0.csv")));

  io::write_file(kRoot / "outside.csv", "t,re,im\n0,0.1,0\n1,1.2,0\n");
  const json bad = {{"N", 16}, {"trajectories", {"outside.csv"}}};
  CHECK(run_binary("dmd", write_config("dmd_bad", bad), kRoot / "dmd_bad") == 2);
  CHECK(io::read_file(kRoot / "dmd_bad.log").find("row 3") != std::string::npos);
}

TEST_CASE("run_command in process") {
  const cli::ExperimentConfig cfg = cli::parse_config(json::parse(R"({"N": 16, "f": [0, 1]})"), kRoot);
  std::ostringstream log;
  CHECK(cli::run_command("spectrum", cfg, kRoot / "inproc", log) == cli::kExitPass);
  CHECK(log.str().find("spectrum: PASS") != std::string::npos);
  CHECK_THROWS_AS(cli::run_command("nope", cfg, kRoot / "inproc", log), Error);
}
