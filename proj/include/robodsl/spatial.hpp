#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace robodsl {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

enum class Axis { x = 0, y = 1, z = 2 };
enum class JointKind { revolute, prismatic };

/// Motion or force vector in Plücker coordinates, angular part first.
struct SpatialVector {
  Vec3 angular = Vec3::Zero();
  Vec3 linear = Vec3::Zero();

  static SpatialVector zero() { return {}; }
  static SpatialVector from_vec6(const Vec6& v);
  Vec6 to_vec6() const;

  double operator[](int i) const { return i < 3 ? angular[i] : linear[i - 3]; }
  double& operator[](int i) { return i < 3 ? angular[i] : linear[i - 3]; }

  SpatialVector& operator+=(const SpatialVector& o) {
    angular += o.angular;
    linear += o.linear;
    return *this;
  }
  SpatialVector& operator-=(const SpatialVector& o) {
    angular -= o.angular;
    linear -= o.linear;
    return *this;
  }
};

inline SpatialVector operator+(SpatialVector a, const SpatialVector& b) { return a += b; }
inline SpatialVector operator-(SpatialVector a, const SpatialVector& b) { return a -= b; }
inline SpatialVector operator*(double s, const SpatialVector& v) {
  return {s * v.angular, s * v.linear};
}

double dot(const SpatialVector& a, const SpatialVector& b);

/// Plücker transform from frame A to frame B. `rotation` maps A coordinates to
/// B coordinates and `translation` is the origin of B expressed in A.
struct SpatialTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static SpatialTransform identity() { return {}; }
  Mat6 motion_matrix() const;
};

SpatialTransform compose(const SpatialTransform& a, const SpatialTransform& b);
SpatialTransform inverse(const SpatialTransform& x);
SpatialVector apply_motion(const SpatialTransform& x, const SpatialVector& v);
SpatialVector apply_force(const SpatialTransform& x, const SpatialVector& f);
/// Force transform by the transpose of `x`, i.e. from B coordinates back to A.
SpatialVector apply_force_transpose(const SpatialTransform& x, const SpatialVector& f);

// Coordinate transforms for a frame rotated by `angle` about a parent axis.
SpatialTransform rot_x(double angle);
SpatialTransform rot_y(double angle);
SpatialTransform rot_z(double angle);
SpatialTransform rot_about(Axis axis, double angle);
SpatialTransform translate(double x, double y, double z);
SpatialTransform translate(const Vec3& r);

/// Frame placement from a translation and an (x, y, z) intrinsic rotation
/// triple in radians: the child frame is obtained by rotating about x, then
/// the new y, then the new z. Trigonometric values within 1e-15 of 0 or +-1
/// are snapped so that quarter turns yield exact permutation matrices.
SpatialTransform placement_from_xyz(const Vec3& translation, const Vec3& rotation_xyz);

bool is_proper_rotation(const Mat3& r, double tol = 1e-12);

SpatialVector cross_motion(const SpatialVector& v, const SpatialVector& w);
SpatialVector cross_force(const SpatialVector& v, const SpatialVector& f);

/// Rigid-body inertia expressed about the owning frame origin.
struct SpatialInertia {
  double mass = 0.0;
  Vec3 com = Vec3::Zero();
  Mat3 rot_inertia = Mat3::Zero();

  static SpatialInertia zero() { return {}; }
  Mat6 to_matrix() const;
  bool is_zero() const;
  /// Rotational inertia about the centre of mass.
  Mat3 central_inertia() const;
};

SpatialVector inertia_times_motion(const SpatialInertia& inertia, const SpatialVector& v);

struct MotionSubspace {
  JointKind kind = JointKind::revolute;
  Axis axis = Axis::z;

  SpatialVector densify() const;
  /// Index of the single non-zero entry in the 6-vector form.
  int index() const { return static_cast<int>(axis) + (kind == JointKind::prismatic ? 3 : 0); }
};

Mat3 skew(const Vec3& v);

char axis_name(Axis axis);
const char* joint_kind_name(JointKind kind);

}  // namespace robodsl
