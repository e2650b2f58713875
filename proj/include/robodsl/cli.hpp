#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "robodsl/codegen.hpp"

namespace robodsl::cli {

enum ExitStatus : int { ok = 0, diagnostics = 1, usage = 2, verification_failed = 3 };

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

int cmd_check(const std::filesystem::path& file, const Streams& io);

struct GenerateArgs {
  std::filesystem::path file;
  Target target = Target::self_language;
  std::filesystem::path out_dir = ".";
  bool no_precompute = false;
  bool no_comments = false;
  std::string prefix;
};
int cmd_generate(const GenerateArgs& args, const Streams& io);

struct VerifyArgs {
  std::filesystem::path file;
  long long samples = 1000;
  std::uint64_t seed = 42;
  std::string variant = "self";
  bool inject_fault = false;
};
int cmd_verify(const VerifyArgs& args, const Streams& io);

struct BenchArgs {
  std::vector<std::filesystem::path> files;
  long long calls = 100000;
  std::uint64_t seed = 1;
  int repeats = 5;
  std::filesystem::path record;
  std::filesystem::path table;
};
int cmd_bench(const BenchArgs& args, const Streams& io);

/// Parses argv (argv[0] is the program name) and dispatches.
int run(int argc, const char* const* argv, const Streams& io);

}  // namespace robodsl::cli
