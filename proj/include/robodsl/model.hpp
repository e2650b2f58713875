#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robodsl/diagnostic.hpp"
#include "robodsl/spatial.hpp"

namespace robodsl {

enum class LinkKind { chain, virtual_link };
enum class BaseMobility { fixed, floating };

struct NamedFrame {
  std::string name;
  SpatialTransform transform;
};

struct Link {
  std::string name;
  LinkKind kind = LinkKind::chain;
  SpatialInertia inertia;
  std::vector<NamedFrame> extra_frames;
};

struct BaseLink {
  std::string name;
  BaseMobility mobility = BaseMobility::fixed;
  SpatialInertia inertia;
  /// World-to-base placement; only meaningful for a fixed base.
  std::optional<SpatialTransform> placement;
  std::vector<NamedFrame> extra_frames;
};

struct Joint {
  std::string name;
  JointKind kind = JointKind::revolute;
  MotionSubspace subspace;
  /// Constant transform from the predecessor link frame to the joint frame.
  SpatialTransform placement;
};

/// Predecessor/successor of a joint. An empty predecessor denotes the base.
struct JointConnection {
  std::optional<std::size_t> predecessor;
  std::size_t successor = 0;
};

// --- unvalidated input to model construction --------------------------------

struct CandidateBase {
  std::string name;
  BaseMobility mobility = BaseMobility::fixed;
  SpatialInertia inertia;
  std::optional<SpatialTransform> placement;
  std::vector<NamedFrame> extra_frames;
  SourceLocation location;
  SourceLocation inertia_location;
  SourceLocation placement_location;
  std::vector<SourceLocation> frame_locations;
};

struct CandidateLink {
  std::string name;
  LinkKind kind = LinkKind::chain;
  SpatialInertia inertia;
  std::vector<NamedFrame> extra_frames;
  SourceLocation location;
  SourceLocation inertia_location;
  std::vector<SourceLocation> frame_locations;
};

struct CandidateJoint {
  std::string name;
  JointKind kind = JointKind::revolute;
  Axis axis = Axis::z;
  SpatialTransform placement;
  SourceLocation location;
};

/// One `child via joint` entry listed under `parent`.
struct CandidateConnection {
  std::string parent;
  std::string child;
  std::string joint;
  SourceLocation location;
};

struct ModelCandidate {
  std::string name;
  CandidateBase base;
  std::vector<CandidateLink> links;
  std::vector<CandidateJoint> joints;
  std::vector<CandidateConnection> connections;
};

/// All violations of the kinematic-tree invariants, in document order.
/// Empty iff the candidate describes a valid model.
std::vector<Diagnostic> validate(const ModelCandidate& candidate);

class RobotModel;

struct ModelResult;

/// Validated, immutable kinematic tree. Joints are stored in DoF order.
class RobotModel {
 public:
  static ModelResult create(const ModelCandidate& candidate);

  const std::string& name() const { return name_; }
  const BaseLink& base() const { return base_; }
  std::span<const Link> links() const { return links_; }
  std::span<const Joint> joints() const { return joints_; }
  const JointConnection& connection(std::size_t joint) const { return connections_[joint]; }
  /// Joint indices defining the ordering of q.
  const std::vector<std::size_t>& dof_order() const { return dof_order_; }
  std::size_t parent_joint_of(std::size_t link) const { return parent_joint_[link]; }

  std::size_t dof_count() const { return joints_.size(); }
  /// FNV-1a 64 over a canonical serialization of every model field.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  RobotModel() = default;

  std::string name_;
  BaseLink base_;
  std::vector<Link> links_;
  std::vector<Joint> joints_;
  std::vector<JointConnection> connections_;
  std::vector<std::size_t> dof_order_;
  std::vector<std::size_t> parent_joint_;
  std::uint64_t fingerprint_ = 0;
};

struct ModelResult {
  std::optional<RobotModel> model;
  std::vector<Diagnostic> diagnostics;
};

std::size_t dof_count(const RobotModel& model);

/// ^sX_J: rotation by q about the joint axis or translation by q along it.
SpatialTransform joint_motion_transform(const Joint& joint, double q);

/// Maps predecessor-link coordinates to successor-link coordinates.
SpatialTransform link_to_parent_transform(const Joint& joint, double q);
SpatialTransform link_to_parent_transform(const RobotModel& model, std::size_t joint, double q);

std::string format_fingerprint(std::uint64_t fp);

}  // namespace robodsl
