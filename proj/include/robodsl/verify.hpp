#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "robodsl/model.hpp"
#include "robodsl/rnea.hpp"

namespace robodsl {

/// Signature shared by every generated inverse-dynamics entry point.
using RneaFn = void (*)(const double* q, const double* qd, const double* qdd, const double* g, double* tau);

/// A generated kernel compiled into this executable.
struct GeneratedEntry {
  std::string model_name;
  std::string variant;  // "self", "self-noprecompute" or "c99"
  std::uint64_t fingerprint = 0;
  int dof = 0;
  RneaFn fn = nullptr;
};

class FingerprintMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random joint states: q in [-pi, pi] (revolute) or [-1, 1] (prismatic),
/// qd and qdd in [-10, 10]. Deterministic in `seed`.
std::vector<JointState> sample_states(const RobotModel& model, std::size_t count, std::uint64_t seed);

struct VerifyOptions {
  Gravity gravity{};
  /// Flips the sign of the generated tau[0]; checks that the harness can fail.
  bool inject_fault = false;
};

struct VerifyReport {
  std::string model_name;
  std::string variant;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Largest |generated - reference| / max(1, |reference|) over all components.
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  JointState worst_state;
  std::size_t worst_sample = 0;
  std::size_t worst_component = 0;
  double tolerance = 1e-12;
  bool pass = false;
};

/// Compares `entry` against the interpreter on `samples` random states.
/// Throws FingerprintMismatch when the entry was generated from a different
/// model and std::invalid_argument when samples == 0.
VerifyReport verify(const RobotModel& model, const GeneratedEntry& entry, std::size_t samples, std::uint64_t seed,
                    const VerifyOptions& opts = {});

struct StateComparison {
  std::vector<double> reference;
  std::vector<double> generated;
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
};

/// Re-evaluates a single state, e.g. the worst_state of a report.
StateComparison compare_state(const RobotModel& model, const GeneratedEntry& entry, const JointState& state,
                              const VerifyOptions& opts = {});

void print_verify_report(std::ostream& out, const VerifyReport& r);

}  // namespace robodsl
