#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "robodsl/spatial.hpp"

namespace robodsl::ast {

struct Span {
  int line = 0;
  int column = 0;
};

struct Ident {
  std::string text;
  Span span;
};

struct Number {
  double value = 0.0;
  Span span;
};

struct Vec3Node {
  std::array<Number, 3> values;
  Span span;
};

/// mass, CoM and the six independent entries of the rotational inertia about
/// the link frame origin, in the order Ixx, Iyy, Izz, Ixy, Ixz, Iyz.
struct InertiaParamsNode {
  Number mass;
  Vec3Node com;
  std::array<Number, 6> inertia;
  Span span;
};

struct RefFrameNode {
  Vec3Node translation;
  Vec3Node rotation;
  Span span;
};

struct ChildEntry {
  Ident child;
  Ident joint;
};

struct ChildrenListNode {
  std::vector<ChildEntry> entries;
  Span span;
};

struct FrameDecl {
  Ident name;
  RefFrameNode frame;
};

struct FramesNode {
  std::vector<FrameDecl> frames;
  Span span;
};

struct BaseDecl {
  Ident name;
  bool floating = false;
  InertiaParamsNode inertia;
  std::optional<RefFrameNode> placement;
  std::optional<ChildrenListNode> children;
  std::optional<FramesNode> frames;
  Span span;
};

struct LinkDecl {
  Ident name;
  bool is_virtual = false;
  InertiaParamsNode inertia;
  std::optional<ChildrenListNode> children;
  std::optional<FramesNode> frames;
  Span span;
};

struct JointDecl {
  Ident name;
  JointKind kind = JointKind::revolute;
  Axis axis = Axis::z;
  Span axis_span;
  RefFrameNode placement;
  Span span;
};

struct Document {
  Ident robot_name;
  BaseDecl base;
  std::vector<LinkDecl> links;
  std::vector<JointDecl> joints;
  Span span;
};

/// Equality of everything except source spans; numbers compare bitwise.
bool structurally_equal(const Document& a, const Document& b);

}  // namespace robodsl::ast

namespace robodsl {
using AstDocument = ast::Document;
}
