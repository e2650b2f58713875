#include "robodsl/rnea.hpp"

#include <string>

namespace robodsl {

InverseDynamics::InverseDynamics(const RobotModel& model) : model_(model) {
  if (model.base().mobility == BaseMobility::floating)
    throw UnsupportedModel("model '" + model.name() +
                           "' has a floating base; floating-base inverse dynamics is not supported");
  const auto& order = model.dof_order();
  std::vector<int> position(model.joints().size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);

  body_.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t j = order[i];
    const auto& conn = model.connection(j);
    Body& b = body_[i];
    b.joint = &model.joints()[j];
    b.s_index = b.joint->subspace.index();
    b.inertia = &model.links()[conn.successor].inertia;
    if (conn.predecessor) b.parent = position[model.parent_joint_of(*conn.predecessor)];
  }
  x_.resize(body_.size());
  v_.resize(body_.size());
  a_.resize(body_.size());
  f_.resize(body_.size());
}

void InverseDynamics::compute(std::span<const double> q, std::span<const double> qd,
                              std::span<const double> qdd, const Vec3& gravity, std::span<double> tau) {
  const std::size_t n = body_.size();
  if (q.size() != n || qd.size() != n || qdd.size() != n || tau.size() != n)
    throw std::invalid_argument("joint state length does not match the model DoF count");

  SpatialVector base_acc;
  base_acc.linear = -gravity;

  for (std::size_t i = 0; i < n; ++i) {
    const Body& b = body_[i];
    x_[i] = link_to_parent_transform(*b.joint, q[i]);
    if (b.parent < 0) {
      v_[i] = SpatialVector::zero();
      a_[i] = apply_motion(x_[i], base_acc);
    } else {
      v_[i] = apply_motion(x_[i], v_[b.parent]);
      a_[i] = apply_motion(x_[i], a_[b.parent]);
    }
    SpatialVector s_qd;
    s_qd[b.s_index] = qd[i];
    v_[i][b.s_index] += qd[i];
    a_[i][b.s_index] += qdd[i];
    a_[i] += cross_motion(v_[i], s_qd);
    f_[i] = inertia_times_motion(*b.inertia, a_[i]) +
            cross_force(v_[i], inertia_times_motion(*b.inertia, v_[i]));
  }
  for (std::size_t i = n; i-- > 0;) {
    const Body& b = body_[i];
    tau[i] = f_[i][b.s_index];
    if (b.parent >= 0) f_[b.parent] += apply_force_transpose(x_[i], f_[i]);
  }
}

std::vector<double> rnea(const RobotModel& model, const JointState& state, const Gravity& gravity) {
  InverseDynamics engine(model);
  std::vector<double> tau(model.dof_count());
  engine.compute(state.q, state.qd, state.qdd, gravity.g, tau);
  return tau;
}

Eigen::MatrixXd mass_matrix_via_rnea(const RobotModel& model, std::span<const double> q) {
  const std::size_t n = model.dof_count();
  InverseDynamics engine(model);
  std::vector<double> zero(n, 0.0), unit(n, 0.0), tau(n);
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    unit[i] = 1.0;
    engine.compute(q, zero, unit, Vec3::Zero(), tau);
    for (std::size_t r = 0; r < n; ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = tau[r];
    unit[i] = 0.0;
  }
  return m;
}

std::vector<double> bias_forces(const RobotModel& model, std::span<const double> q, std::span<const double> qd,
                                const Gravity& gravity) {
  InverseDynamics engine(model);
  std::vector<double> zero(model.dof_count(), 0.0), tau(model.dof_count());
  engine.compute(q, qd, zero, gravity.g, tau);
  return tau;
}

}  // namespace robodsl
