#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "robodsl/model.hpp"

namespace robodsl {

/// Joint positions, velocities and desired accelerations in DoF order.
struct JointState {
  std::vector<double> q;
  std::vector<double> qd;
  std::vector<double> qdd;

  static JointState zero(std::size_t dof) {
    return {std::vector<double>(dof, 0.0), std::vector<double>(dof, 0.0), std::vector<double>(dof, 0.0)};
  }
};

/// Acceleration of gravity expressed in the base frame.
struct Gravity {
  Vec3 g{0.0, 0.0, -9.81};

  static Gravity none() { return Gravity{Vec3::Zero()}; }
};

class UnsupportedModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generic recursive Newton-Euler inverse dynamics for one model.
///
/// The per-link workspace is allocated once in the constructor; compute()
/// does not touch the heap. An instance is not safe to share between threads
/// during a call; create one per thread.
class InverseDynamics {
 public:
  /// Throws UnsupportedModel for a floating-base model.
  explicit InverseDynamics(const RobotModel& model);

  /// tau = M(q) qdd + c(q, qd) + g(q). Throws std::invalid_argument when a
  /// span length differs from the DoF count.
  void compute(std::span<const double> q, std::span<const double> qd, std::span<const double> qdd,
               const Vec3& gravity, std::span<double> tau);

  const RobotModel& model() const { return model_; }
  std::size_t dof() const { return body_.size(); }

 private:
  struct Body {
    const Joint* joint = nullptr;
    int parent = -1;  // body index, -1 for the base
    int s_index = 0;
    const SpatialInertia* inertia = nullptr;
  };

  const RobotModel& model_;
  std::vector<Body> body_;
  std::vector<SpatialTransform> x_;
  std::vector<SpatialVector> v_;
  std::vector<SpatialVector> a_;
  std::vector<SpatialVector> f_;
};

std::vector<double> rnea(const RobotModel& model, const JointState& state, const Gravity& gravity = {});

/// Columns are rnea(q, 0, e_i, g = 0).
Eigen::MatrixXd mass_matrix_via_rnea(const RobotModel& model, std::span<const double> q);

/// rnea with qdd = 0: Coriolis, centrifugal and gravity terms.
std::vector<double> bias_forces(const RobotModel& model, std::span<const double> q, std::span<const double> qd,
                                const Gravity& gravity = {});

}  // namespace robodsl
