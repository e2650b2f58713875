#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "robodsl/model.hpp"
#include "robodsl/verify.hpp"

namespace robodsl {

struct BenchOptions {
  long long calls = 100000;
  std::uint64_t seed = 1;
  /// The reported time is the minimum over this many timed loops.
  int repeats = 5;
  long long warmup = 1000;
};

struct VariantTiming {
  std::string variant;  // "interpreter" or "generated"
  double cumulative_seconds = 0.0;
  double per_call_ns = 0.0;
};

struct BenchReport {
  std::string model_name;
  int dof = 0;
  long long calls = 0;
  std::vector<VariantTiming> variants;
  std::string cpu;
  std::uint64_t seed = 0;

  const VariantTiming* find(const std::string& variant) const;
};

inline constexpr long long kMinBenchCalls = 10000;

/// Process CPU time for `calls` inverse-dynamics evaluations with the
/// interpreter and, when `generated` is non-null, the generated kernel.
/// Throws std::invalid_argument when calls < kMinBenchCalls.
BenchReport bench(const RobotModel& model, const GeneratedEntry* generated, const BenchOptions& opts = {});

/// The states a bench run cycles through.
std::vector<JointState> bench_states(const RobotModel& model, std::uint64_t seed);

std::string cpu_description();

void print_bench_report(std::ostream& out, const BenchReport& r);

/// Tab-separated, one row per model and variant, with a header line:
/// name dof variant calls cumulative_seconds per_call_ns seed
void write_bench_records(std::ostream& out, const std::vector<BenchReport>& reports);

/// Tab-separated plot table: dof variant cumulative_seconds
void write_bench_table(std::ostream& out, const std::vector<BenchReport>& reports);

}  // namespace robodsl
