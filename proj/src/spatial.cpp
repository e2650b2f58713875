#include "robodsl/spatial.hpp"

#include <cmath>

namespace robodsl {

SpatialVector SpatialVector::from_vec6(const Vec6& v) {
  return {v.head<3>(), v.tail<3>()};
}

Vec6 SpatialVector::to_vec6() const {
  Vec6 out;
  out << angular, linear;
  return out;
}

double dot(const SpatialVector& a, const SpatialVector& b) {
  return a.angular.dot(b.angular) + a.linear.dot(b.linear);
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Mat6 SpatialTransform::motion_matrix() const {
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<3, 3>() = rotation;
  m.bottomRightCorner<3, 3>() = rotation;
  m.bottomLeftCorner<3, 3>() = -rotation * skew(translation);
  return m;
}

SpatialTransform compose(const SpatialTransform& a, const SpatialTransform& b) {
  return {a.rotation * b.rotation, b.translation + b.rotation.transpose() * a.translation};
}

SpatialTransform inverse(const SpatialTransform& x) {
  return {x.rotation.transpose(), -(x.rotation * x.translation)};
}

SpatialVector apply_motion(const SpatialTransform& x, const SpatialVector& v) {
  return {x.rotation * v.angular,
          x.rotation * (v.linear - x.translation.cross(v.angular))};
}

SpatialVector apply_force(const SpatialTransform& x, const SpatialVector& f) {
  return {x.rotation * (f.angular - x.translation.cross(f.linear)),
          x.rotation * f.linear};
}

SpatialVector apply_force_transpose(const SpatialTransform& x, const SpatialVector& f) {
  const Vec3 lin = x.rotation.transpose() * f.linear;
  return {x.rotation.transpose() * f.angular + x.translation.cross(lin), lin};
}

namespace {

double snap(double v) {
  constexpr double kSnap = 1e-15;
  if (std::abs(v) < kSnap) return 0.0;
  if (std::abs(v - 1.0) < kSnap) return 1.0;
  if (std::abs(v + 1.0) < kSnap) return -1.0;
  return v;
}

Mat3 coordinate_rotation(Axis axis, double c, double s) {
  Mat3 m;
  switch (axis) {
    case Axis::x:
      m << 1, 0, 0,
           0, c, s,
           0, -s, c;
      break;
    case Axis::y:
      m << c, 0, -s,
           0, 1, 0,
           s, 0, c;
      break;
    case Axis::z:
      m << c, s, 0,
           -s, c, 0,
           0, 0, 1;
      break;
  }
  return m;
}

}  // namespace

SpatialTransform rot_about(Axis axis, double angle) {
  return {coordinate_rotation(axis, std::cos(angle), std::sin(angle)), Vec3::Zero()};
}

SpatialTransform rot_x(double angle) { return rot_about(Axis::x, angle); }
SpatialTransform rot_y(double angle) { return rot_about(Axis::y, angle); }
SpatialTransform rot_z(double angle) { return rot_about(Axis::z, angle); }

SpatialTransform translate(double x, double y, double z) { return {Mat3::Identity(), Vec3(x, y, z)}; }
SpatialTransform translate(const Vec3& r) { return {Mat3::Identity(), r}; }

SpatialTransform placement_from_xyz(const Vec3& translation, const Vec3& rotation_xyz) {
  auto snapped = [](Axis axis, double angle) {
    return coordinate_rotation(axis, snap(std::cos(angle)), snap(std::sin(angle)));
  };
  const Mat3 e = snapped(Axis::z, rotation_xyz.z()) * snapped(Axis::y, rotation_xyz.y()) *
                 snapped(Axis::x, rotation_xyz.x());
  return {e, translation};
}

bool is_proper_rotation(const Mat3& r, double tol) {
  const Mat3 err = r * r.transpose() - Mat3::Identity();
  return err.cwiseAbs().maxCoeff() <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

SpatialVector cross_motion(const SpatialVector& v, const SpatialVector& w) {
  return {v.angular.cross(w.angular),
          v.angular.cross(w.linear) + v.linear.cross(w.angular)};
}

SpatialVector cross_force(const SpatialVector& v, const SpatialVector& f) {
  return {v.angular.cross(f.angular) + v.linear.cross(f.linear),
          v.angular.cross(f.linear)};
}

Mat6 SpatialInertia::to_matrix() const {
  Mat6 m;
  const Mat3 mc = mass * skew(com);
  m.topLeftCorner<3, 3>() = rot_inertia;
  m.topRightCorner<3, 3>() = mc;
  m.bottomLeftCorner<3, 3>() = mc.transpose();
  m.bottomRightCorner<3, 3>() = mass * Mat3::Identity();
  return m;
}

bool SpatialInertia::is_zero() const {
  return mass == 0.0 && (com.array() == 0.0).all() && (rot_inertia.array() == 0.0).all();
}

Mat3 SpatialInertia::central_inertia() const {
  const Mat3 cx = skew(com);
  return rot_inertia + mass * cx * cx;
}

SpatialVector inertia_times_motion(const SpatialInertia& inertia, const SpatialVector& v) {
  const Vec3 mc = inertia.mass * inertia.com;
  return {inertia.rot_inertia * v.angular + mc.cross(v.linear),
          inertia.mass * v.linear - mc.cross(v.angular)};
}

SpatialVector MotionSubspace::densify() const {
  SpatialVector s;
  s[index()] = 1.0;
  return s;
}

char axis_name(Axis axis) {
  switch (axis) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    case Axis::z: return 'z';
  }
  return '?';
}

const char* joint_kind_name(JointKind kind) {
  return kind == JointKind::revolute ? "revolute" : "prismatic";
}

}  // namespace robodsl
