#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "robodsl/cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "robodsl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = robodsl::cli::run(static_cast<int>(argv.size()), argv.data(), {out, err, false});
  return {status, out.str(), err.str()};
}

std::string model(const char* name) { return testing::model_file(name).string(); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("robodsl_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check") {
  auto r = run({"check", model("pendulum")});
  CHECK(r.status == 0);
  CHECK(r.out.find("dof: 1\n") != std::string::npos);
  CHECK(r.out.find("links: 2\n") != std::string::npos);
  CHECK(r.out.find("base: fixed\n") != std::string::npos);
  CHECK(r.err.empty());

  r = run({"check", model("hyq")});
  CHECK(r.status == 0);
  CHECK(r.out.find("links: 13\n") != std::string::npos);
  CHECK(r.out.find("base: floating\n") != std::string::npos);

  r = run({"check", testing::fixture("multi_parent.robot").string()});
  CHECK(r.status == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("multi_parent.robot:15:20: error[multi-parent]:") != std::string::npos);

  CHECK(run({"check", "/nonexistent.robot"}).status == 2);
  CHECK(run({"check"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("generate") {
  const auto dir = scratch("generate");
  auto r = run({"generate", model("pendulum"), "--target", "c99", "--out", dir.string()});
  CHECK(r.status == 0);
  CHECK(fs::exists(dir / "pendulum_rnea.c"));
  CHECK(fs::exists(dir / "pendulum_rnea.h"));
  CHECK(r.out.find("entry: pendulum_rnea") != std::string::npos);
  CHECK(r.out.find("flops: ") != std::string::npos);

  const auto first = slurp(dir / "pendulum_rnea.c");
  CHECK(run({"generate", model("pendulum"), "--target", "c99", "--out", dir.string()}).status == 0);
  CHECK(slurp(dir / "pendulum_rnea.c") == first);

  CHECK(run({"generate", model("pendulum"), "--target", "c99", "--out", dir.string(), "--no-precompute"}).status == 0);
  CHECK(slurp(dir / "pendulum_rnea.c") != first);

  r = run({"generate", model("hyq"), "--out", dir.string()});
  CHECK(r.status == 1);
  CHECK(r.err.find("unsupported-floating-base") != std::string::npos);
  CHECK(r.err.find("floating") != std::string::npos);

  CHECK(run({"generate", model("pendulum"), "--target", "fortran", "--out", dir.string()}).status == 2);
  CHECK(run({"generate", model("pendulum"), "--out", dir.string(), "--prefix", "for"}).status == 1);
  fs::remove_all(dir);
}

TEST_CASE("verify") {
  auto r = run({"verify", model("pendulum"), "--samples", "1000", "--seed", "42"});
  CHECK(r.status == 0);
  CHECK(r.out.find("result: pass") != std::string::npos);
  CHECK(run({"verify", model("branched7"), "--samples", "100", "--seed", "1", "--variant", "self-noprecompute"}).status ==
        0);
  CHECK(run({"verify", model("pendulum"), "--samples", "10", "--inject-fault"}).status == 3);
  CHECK(run({"verify", model("pendulum"), "--samples", "0"}).status == 2);
  CHECK(run({"verify", model("hyq")}).status == 1);
  CHECK(run({"verify", testing::fixture("chain.robot").string()}).status == 2);

  // Same robot name, different model data: the compiled kernel is refused.
  const auto dir = scratch("verify");
  std::string text = slurp(model("pendulum"));
  text.replace(text.find("mass = 1.0"), 10, "mass = 0.5");
  std::ofstream(dir / "edited.robot") << text;
  r = run({"verify", (dir / "edited.robot").string(), "--samples", "10"});
  CHECK(r.status == 2);
  CHECK(r.err.find("fingerprint") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("bench") {
  CHECK(run({"bench", model("pendulum"), "--calls", "100"}).status == 2);
  const auto dir = scratch("bench");
  auto r = run({"bench", model("slider_leg4"), "--calls", "10000", "--repeats", "1", "--record",
                (dir / "out.rec").string(), "--table", (dir / "fig.tsv").string()});
  CHECK(r.status == 0);
  CHECK(r.out.find("calls: 10000") != std::string::npos);
  const auto rec = slurp(dir / "out.rec");
  CHECK(rec.find("SliderLeg\t4\tinterpreter\t10000\t") != std::string::npos);
  CHECK(rec.find("SliderLeg\t4\tgenerated\t10000\t") != std::string::npos);
  CHECK(slurp(dir / "fig.tsv").find("4\tgenerated\t") != std::string::npos);
  CHECK(run({"bench", model("hyq"), "--calls", "10000"}).status == 1);
  fs::remove_all(dir);
}
