#include "robodsl/ast.hpp"

#include <bit>
#include <cstdint>

namespace robodsl::ast {

namespace {

bool eq(const Number& a, const Number& b) {
  return std::bit_cast<std::uint64_t>(a.value) == std::bit_cast<std::uint64_t>(b.value);
}
bool eq(const Ident& a, const Ident& b) { return a.text == b.text; }

bool eq(const Vec3Node& a, const Vec3Node& b) {
  for (int i = 0; i < 3; ++i)
    if (!eq(a.values[i], b.values[i])) return false;
  return true;
}

bool eq(const InertiaParamsNode& a, const InertiaParamsNode& b) {
  if (!eq(a.mass, b.mass) || !eq(a.com, b.com)) return false;
  for (int i = 0; i < 6; ++i)
    if (!eq(a.inertia[i], b.inertia[i])) return false;
  return true;
}

bool eq(const RefFrameNode& a, const RefFrameNode& b) {
  return eq(a.translation, b.translation) && eq(a.rotation, b.rotation);
}

bool eq(const ChildEntry& a, const ChildEntry& b) { return eq(a.child, b.child) && eq(a.joint, b.joint); }
bool eq(const FrameDecl& a, const FrameDecl& b) { return eq(a.name, b.name) && eq(a.frame, b.frame); }
bool eq(const ChildrenListNode& a, const ChildrenListNode& b);
bool eq(const FramesNode& a, const FramesNode& b);
bool eq(const LinkDecl& a, const LinkDecl& b);
bool eq(const JointDecl& a, const JointDecl& b);

template <class T>
bool eq(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i])) return false;
  return true;
}

template <class T>
bool eq(const std::optional<T>& a, const std::optional<T>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || eq(*a, *b);
}

bool eq(const ChildrenListNode& a, const ChildrenListNode& b) { return eq(a.entries, b.entries); }
bool eq(const FramesNode& a, const FramesNode& b) { return eq(a.frames, b.frames); }

bool eq(const BaseDecl& a, const BaseDecl& b) {
  return eq(a.name, b.name) && a.floating == b.floating && eq(a.inertia, b.inertia) &&
         eq(a.placement, b.placement) && eq(a.children, b.children) && eq(a.frames, b.frames);
}

bool eq(const LinkDecl& a, const LinkDecl& b) {
  return eq(a.name, b.name) && a.is_virtual == b.is_virtual && eq(a.inertia, b.inertia) &&
         eq(a.children, b.children) && eq(a.frames, b.frames);
}

bool eq(const JointDecl& a, const JointDecl& b) {
  return eq(a.name, b.name) && a.kind == b.kind && a.axis == b.axis && eq(a.placement, b.placement);
}

}  // namespace

bool structurally_equal(const Document& a, const Document& b) {
  return eq(a.robot_name, b.robot_name) && eq(a.base, b.base) && eq(a.links, b.links) &&
         eq(a.joints, b.joints);
}

}  // namespace robodsl::ast
