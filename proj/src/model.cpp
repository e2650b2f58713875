#include "robodsl/model.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace robodsl {

namespace {

constexpr double kSymmetryTol = 1e-9;
constexpr double kPsdTol = 1e-9;

Diagnostic error(std::string code, std::string message, SourceLocation loc) {
  return {Severity::error, std::move(code), std::move(message), std::move(loc)};
}

bool all_finite(const SpatialInertia& in) {
  return std::isfinite(in.mass) && in.com.allFinite() && in.rot_inertia.allFinite();
}

bool all_finite(const SpatialTransform& x) {
  return x.rotation.allFinite() && x.translation.allFinite();
}

void check_inertia(const std::string& owner, const SpatialInertia& in, bool must_be_zero,
                   const SourceLocation& loc, std::vector<Diagnostic>& out) {
  if (!all_finite(in)) {
    out.push_back(error("non-finite", "inertia of '" + owner + "' contains a non-finite value", loc));
    return;
  }
  if (must_be_zero) {
    if (!in.is_zero())
      out.push_back(error("virtual-nonzero-inertia",
                          "virtual link '" + owner + "' must have all inertia parameters equal to zero",
                          loc));
    return;
  }
  if (in.mass < 0.0)
    out.push_back(error("negative-mass", "link '" + owner + "' has negative mass", loc));
  const double asym = (in.rot_inertia - in.rot_inertia.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    out.push_back(error("asymmetric-inertia", "inertia matrix of '" + owner + "' is not symmetric", loc));
    return;
  }
  if (in.mass < 0.0) return;
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(in.central_inertia(), Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, in.rot_inertia.cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -kPsdTol * scale)
    out.push_back(error("inertia-not-psd",
                        "inertia of '" + owner + "' is not positive semidefinite about its centre of mass",
                        loc));
}

void check_frames(const std::string& owner, const std::vector<NamedFrame>& frames,
                  const std::vector<SourceLocation>& locs, const SourceLocation& fallback,
                  std::vector<Diagnostic>& out) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& loc = i < locs.size() ? locs[i] : fallback;
    if (!seen.insert(frames[i].name).second)
      out.push_back(error("duplicate-frame",
                          "frame '" + frames[i].name + "' declared twice on '" + owner + "'", loc));
    if (!all_finite(frames[i].transform))
      out.push_back(error("non-finite", "frame '" + frames[i].name + "' has a non-finite parameter", loc));
  }
}

// Byte sink for the model fingerprint.
class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      const unsigned char b = static_cast<unsigned char>(v >> (8 * i));
      bytes(&b, 1);
    }
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  void vec(const Vec3& v) {
    for (int i = 0; i < 3; ++i) f64(v[i]);
  }
  void mat(const Mat3& m) {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) f64(m(r, c));
  }
  void transform(const SpatialTransform& x) {
    mat(x.rotation);
    vec(x.translation);
  }
  void inertia(const SpatialInertia& in) {
    f64(in.mass);
    vec(in.com);
    mat(in.rot_inertia);
  }
  void frames(const std::vector<NamedFrame>& fs) {
    u64(fs.size());
    for (const auto& f : fs) {
      str(f.name);
      transform(f.transform);
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::vector<Diagnostic> validate(const ModelCandidate& c) {
  std::vector<Diagnostic> out;

  // Names. The base shares the link namespace.
  std::map<std::string, std::size_t> link_index;  // base is not in this map
  std::set<std::string> link_names{c.base.name};
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    const auto& l = c.links[i];
    if (!link_names.insert(l.name).second) {
      out.push_back(error("duplicate-name", "link '" + l.name + "' is declared more than once", l.location));
      continue;
    }
    link_index.emplace(l.name, i);
  }
  std::map<std::string, std::size_t> joint_index;
  for (std::size_t i = 0; i < c.joints.size(); ++i) {
    const auto& j = c.joints[i];
    if (!joint_index.emplace(j.name, i).second)
      out.push_back(error("duplicate-name", "joint '" + j.name + "' is declared more than once", j.location));
  }

  // Per-entity checks.
  check_inertia(c.base.name, c.base.inertia, false, c.base.inertia_location, out);
  check_frames(c.base.name, c.base.extra_frames, c.base.frame_locations, c.base.location, out);
  if (c.base.placement) {
    if (c.base.mobility == BaseMobility::floating)
      out.push_back(error("floating-base-placement",
                          "floating base '" + c.base.name + "' cannot specify a reference frame transform",
                          c.base.placement_location));
    else if (!is_proper_rotation(c.base.placement->rotation, 1e-9))
      out.push_back(error("improper-rotation", "base placement rotation is not orthonormal",
                          c.base.placement_location));
  }
  for (const auto& l : c.links) {
    check_inertia(l.name, l.inertia, l.kind == LinkKind::virtual_link, l.inertia_location, out);
    check_frames(l.name, l.extra_frames, l.frame_locations, l.location, out);
  }
  for (const auto& j : c.joints) {
    if (!all_finite(j.placement))
      out.push_back(error("non-finite", "placement of joint '" + j.name + "' has a non-finite parameter",
                          j.location));
    else if (!is_proper_rotation(j.placement.rotation, 1e-9))
      out.push_back(error("improper-rotation", "placement of joint '" + j.name + "' is not a proper rotation",
                          j.location));
  }

  // Topology. Only the first connection naming a child or joint is used for
  // the tree analysis; later ones are reported and ignored.
  constexpr std::size_t kBase = static_cast<std::size_t>(-1);
  constexpr std::size_t kNone = static_cast<std::size_t>(-2);
  std::vector<std::size_t> parent_of(c.links.size(), kNone);
  std::vector<std::size_t> joint_of(c.links.size(), kNone);
  std::vector<bool> joint_used(c.joints.size(), false);
  std::vector<bool> mentioned(c.joints.size(), false);  // appears in a children list
  std::vector<std::size_t> connection_of_joint(c.joints.size(), kNone);
  bool structural_error = false;

  for (std::size_t ci = 0; ci < c.connections.size(); ++ci) {
    const auto& conn = c.connections[ci];
    std::size_t parent = kNone;
    if (conn.parent == c.base.name) {
      parent = kBase;
    } else if (auto it = link_index.find(conn.parent); it != link_index.end()) {
      parent = it->second;
    }
    auto child_it = link_index.find(conn.child);
    auto joint_it = joint_index.find(conn.joint);
    if (parent == kNone) {
      out.push_back(error("unresolved-name", "unknown link '" + conn.parent + "'", conn.location));
      structural_error = true;
      continue;
    }
    if (conn.child == c.base.name) {
      out.push_back(error("base-has-parent", "the base '" + c.base.name + "' cannot be the child of a link",
                          conn.location));
      structural_error = true;
      continue;
    }
    if (child_it == link_index.end()) {
      out.push_back(error("unresolved-name", "unknown link '" + conn.child + "'", conn.location));
      structural_error = true;
      continue;
    }
    if (joint_it == joint_index.end()) {
      out.push_back(error("unresolved-name", "unknown joint '" + conn.joint + "'", conn.location));
      structural_error = true;
      continue;
    }
    const std::size_t child = child_it->second;
    const std::size_t joint = joint_it->second;
    if (parent_of[child] != kNone) {
      mentioned[joint] = true;
      out.push_back(error("multi-parent",
                          "link '" + conn.child + "' is already the child of '" +
                              (parent_of[child] == kBase ? c.base.name : c.links[parent_of[child]].name) +
                              "'; a link cannot be the child of more than one other link",
                          conn.location));
      structural_error = true;
      continue;
    }
    mentioned[joint] = true;
    if (joint_used[joint]) {
      out.push_back(error("joint-reuse", "joint '" + conn.joint + "' already connects another pair of links",
                          conn.location));
      structural_error = true;
      continue;
    }
    parent_of[child] = parent;
    joint_of[child] = joint;
    joint_used[joint] = true;
    connection_of_joint[joint] = ci;
  }

  for (std::size_t j = 0; j < c.joints.size(); ++j) {
    // Duplicated joints were already reported; only the first one can be used.
    if (joint_index.at(c.joints[j].name) != j) continue;
    if (!joint_used[j] && !mentioned[j]) {
      out.push_back(error("unconnected-joint",
                          "joint '" + c.joints[j].name + "' does not appear in any children list",
                          c.joints[j].location));
      structural_error = true;
    }
  }

  // 0 = unvisited, 1 = on current path, 2 = reaches base, 3 = does not reach base.
  std::vector<int> state(c.links.size(), 0);
  for (std::size_t start = 0; start < c.links.size(); ++start) {
    if (state[start] != 0 || link_index.at(c.links[start].name) != start) continue;
    std::vector<std::size_t> path;
    std::size_t cur = start;
    int verdict = 0;
    while (true) {
      if (cur == kBase) { verdict = 2; break; }
      if (cur == kNone) { verdict = 3; break; }
      if (state[cur] == 2 || state[cur] == 3) { verdict = state[cur]; break; }
      if (state[cur] == 1) {
        // Found a cycle; it consists of the path suffix starting at `cur`.
        auto pos = std::find(path.begin(), path.end(), cur);
        std::size_t first = *std::min_element(pos, path.end());
        std::string chain;
        for (auto it = pos; it != path.end(); ++it) chain += c.links[*it].name + " -> ";
        chain += c.links[cur].name;
        out.push_back(error("cycle", "links form a cycle: " + chain, c.links[first].location));
        structural_error = true;
        verdict = 3;
        break;
      }
      state[cur] = 1;
      path.push_back(cur);
      if (parent_of[cur] == kNone) {
        out.push_back(error("unreachable-link",
                            "link '" + c.links[cur].name + "' is not connected to the base '" + c.base.name + "'",
                            c.links[cur].location));
        structural_error = true;
        verdict = 3;
        break;
      }
      cur = parent_of[cur];
    }
    for (auto l : path) state[l] = verdict;
  }

  // Declaration order of joints defines q and must be topological.
  if (!structural_error) {
    for (std::size_t j = 0; j < c.joints.size(); ++j) {
      if (connection_of_joint[j] == kNone) continue;
      const auto& conn = c.connections[connection_of_joint[j]];
      if (conn.parent == c.base.name) continue;
      const std::size_t parent_link = link_index.at(conn.parent);
      const std::size_t parent_joint = joint_of[parent_link];
      if (parent_joint > j)
        out.push_back(error("joint-order",
                            "joint '" + c.joints[j].name + "' is declared before joint '" +
                                c.joints[parent_joint].name +
                                "' of its predecessor link; joints must be declared parent-first",
                            c.joints[j].location));
    }
  }

  sort_by_location(out);
  return out;
}

ModelResult RobotModel::create(const ModelCandidate& c) {
  ModelResult result;
  result.diagnostics = validate(c);
  if (has_errors(result.diagnostics)) return result;

  RobotModel m;
  m.name_ = c.name;
  m.base_ = {c.base.name, c.base.mobility, c.base.inertia, c.base.placement, c.base.extra_frames};
  std::map<std::string, std::size_t> link_index;
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    const auto& l = c.links[i];
    m.links_.push_back({l.name, l.kind, l.inertia, l.extra_frames});
    link_index.emplace(l.name, i);
  }
  std::map<std::string, std::size_t> joint_index;
  for (std::size_t i = 0; i < c.joints.size(); ++i) {
    const auto& j = c.joints[i];
    m.joints_.push_back({j.name, j.kind, MotionSubspace{j.kind, j.axis}, j.placement});
    joint_index.emplace(j.name, i);
  }
  m.connections_.resize(m.joints_.size());
  m.parent_joint_.resize(m.links_.size());
  for (const auto& conn : c.connections) {
    const std::size_t j = joint_index.at(conn.joint);
    JointConnection jc;
    if (conn.parent != c.base.name) jc.predecessor = link_index.at(conn.parent);
    jc.successor = link_index.at(conn.child);
    m.connections_[j] = jc;
    m.parent_joint_[jc.successor] = j;
  }
  for (std::size_t j = 0; j < m.joints_.size(); ++j) m.dof_order_.push_back(j);

  Fnv1a h;
  h.str("robodsl-model-v1");
  h.str(m.name_);
  h.str(m.base_.name);
  h.u64(static_cast<std::uint64_t>(m.base_.mobility));
  h.inertia(m.base_.inertia);
  h.u64(m.base_.placement.has_value());
  if (m.base_.placement) h.transform(*m.base_.placement);
  h.frames(m.base_.extra_frames);
  h.u64(m.links_.size());
  for (const auto& l : m.links_) {
    h.str(l.name);
    h.u64(static_cast<std::uint64_t>(l.kind));
    h.inertia(l.inertia);
    h.frames(l.extra_frames);
  }
  h.u64(m.joints_.size());
  for (std::size_t j = 0; j < m.joints_.size(); ++j) {
    const auto& jt = m.joints_[j];
    h.str(jt.name);
    h.u64(static_cast<std::uint64_t>(jt.kind));
    h.u64(static_cast<std::uint64_t>(jt.subspace.axis));
    h.transform(jt.placement);
    h.u64(m.connections_[j].predecessor ? *m.connections_[j].predecessor + 1 : 0);
    h.u64(m.connections_[j].successor);
  }
  m.fingerprint_ = h.value();

  result.model = std::move(m);
  return result;
}

std::size_t dof_count(const RobotModel& model) { return model.dof_count(); }

SpatialTransform joint_motion_transform(const Joint& joint, double q) {
  if (joint.kind == JointKind::revolute) return rot_about(joint.subspace.axis, q);
  Vec3 r = Vec3::Zero();
  r[static_cast<int>(joint.subspace.axis)] = q;
  return translate(r);
}

SpatialTransform link_to_parent_transform(const Joint& joint, double q) {
  return compose(joint_motion_transform(joint, q), joint.placement);
}

SpatialTransform link_to_parent_transform(const RobotModel& model, std::size_t joint, double q) {
  return link_to_parent_transform(model.joints()[joint], q);
}

std::string format_fingerprint(std::uint64_t fp) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

}  // namespace robodsl
