#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "robodsl/diagnostic.hpp"
#include "robodsl/model.hpp"

namespace robodsl {

inline constexpr const char* kToolchainVersion = "1.0.0";

enum class Target { self_language, c99 };

const char* target_name(Target t);

struct GenOptions {
  Target target = Target::self_language;
  bool precompute_constants = true;
  bool emit_comments = true;
  /// Namespace (self target) or symbol prefix (C99). Empty selects a name
  /// derived from the robot name.
  std::string namespace_prefix;
};

struct FlopCount {
  int mul = 0;
  int add = 0;
  int total() const { return mul + add; }
};

struct FlopEstimate {
  FlopCount forward;
  FlopCount backward;
  int multiplies() const { return forward.mul + backward.mul; }
  int total() const { return forward.total() + backward.total(); }
};

struct GeneratedProgram {
  std::string header_filename;
  std::string header_text;
  std::string source_filename;
  std::string source_text;
  /// Fully qualified entry point, e.g. `pendulum::rnea` or `pendulum_rnea`.
  std::string entry_symbol;
  std::uint64_t model_fingerprint = 0;
  GenOptions options_used;
  FlopEstimate flops;
};

class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(Diagnostic d) : std::runtime_error(d.message), diagnostic_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

/// Emits straight-line inverse dynamics for `model`:
///   void rnea(const double* q, const double* qd, const double* qdd, const double* g, double* tau)
/// Throws GenerationError for floating-base models, an invalid prefix, or a
/// clash between the entry symbol and a generated local.
GeneratedProgram generate(const RobotModel& model, const GenOptions& opts);

enum class EntryClass { zero, one, minus_one, general };

/// Classification of every rotation (row-major) and translation entry of a
/// constant placement; drives which multiply-adds are emitted.
struct TransformFoldPlan {
  std::array<EntryClass, 9> rotation{};
  std::array<EntryClass, 3> translation{};

  bool rotation_is_identity() const;
  bool translation_is_zero() const;
};

TransformFoldPlan fold_constant_transform(const SpatialTransform& placement);

/// Multiply/add tokens in the emitted arithmetic, split by pass.
FlopEstimate emitted_flop_estimate(const RobotModel& model, const GenOptions& opts);

/// Statements applying `placement` to a motion vector named in_wx..in_vz and
/// producing out_wx..out_vz. Inspection aid for the folding pass.
std::string emit_transform_snippet(const SpatialTransform& placement, const GenOptions& opts);

std::string default_prefix(const std::string& robot_name);
bool is_valid_prefix(const std::string& prefix);

}  // namespace robodsl
