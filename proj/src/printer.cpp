#include <charconv>

#include "robodsl/parser.hpp"

namespace robodsl {

std::string format_number(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

class Printer {
 public:
  std::string run(const ast::Document& doc) {
    line(0, "Robot " + doc.robot_name.text + " {");
    base(doc.base);
    for (const auto& l : doc.links) {
      out_ += '\n';
      link(l);
    }
    for (const auto& j : doc.joints) {
      out_ += '\n';
      joint(j);
    }
    line(0, "}");
    return std::move(out_);
  }

 private:
  void line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 4, ' ');
    out_ += text;
    out_ += '\n';
  }

  static std::string vec3(const ast::Vec3Node& v) {
    return "(" + format_number(v.values[0].value) + ", " + format_number(v.values[1].value) + ", " +
           format_number(v.values[2].value) + ")";
  }

  void inertia(int d, const ast::InertiaParamsNode& n) {
    static constexpr const char* kNames[6] = {"Ix", "Iy", "Iz", "Ixy", "Ixz", "Iyz"};
    line(d, "inertia_params {");
    line(d + 1, "mass = " + format_number(n.mass.value));
    line(d + 1, "CoM = " + vec3(n.com));
    for (int i = 0; i < 6; ++i) line(d + 1, std::string(kNames[i]) + " = " + format_number(n.inertia[i].value));
    line(d, "}");
  }

  void ref_frame(int d, const std::string& head, const ast::RefFrameNode& n) {
    line(d, head + "ref_frame {");
    line(d + 1, "translation = " + vec3(n.translation));
    line(d + 1, "rotation = " + vec3(n.rotation));
    line(d, "}");
  }

  void children(int d, const std::optional<ast::ChildrenListNode>& n) {
    if (!n) return;
    line(d, "children {");
    for (const auto& e : n->entries) line(d + 1, e.child.text + " via " + e.joint.text);
    line(d, "}");
  }

  void frames(int d, const std::optional<ast::FramesNode>& n) {
    if (!n) return;
    line(d, "frames {");
    for (const auto& f : n->frames) ref_frame(d + 1, f.name.text + " ", f.frame);
    line(d, "}");
  }

  void base(const ast::BaseDecl& b) {
    line(1, "RobotBase " + b.name.text + (b.floating ? " floating {" : " {"));
    inertia(2, b.inertia);
    if (b.placement) ref_frame(2, "", *b.placement);
    children(2, b.children);
    frames(2, b.frames);
    line(1, "}");
  }

  void link(const ast::LinkDecl& l) {
    line(1, std::string(l.is_virtual ? "virtual_link " : "link ") + l.name.text + " {");
    inertia(2, l.inertia);
    children(2, l.children);
    frames(2, l.frames);
    line(1, "}");
  }

  void joint(const ast::JointDecl& j) {
    line(1, std::string(j.kind == JointKind::revolute ? "r_joint " : "p_joint ") + j.name.text + " {");
    line(2, std::string("axis = ") + axis_name(j.axis));
    ref_frame(2, "", j.placement);
    line(1, "}");
  }

  std::string out_;
};

}  // namespace

std::string pretty_print(const AstDocument& doc) { return Printer().run(doc); }

}  // namespace robodsl
