#pragma once

#include <string>
#include <vector>

namespace testing {

// Assembles small model documents for tests.
inline std::string inertia(double mass = 1.0, const std::string& com = "0.1, 0, 0", const std::string& diag = "0.01 0.02 0.02",
                           const std::string& off = "0 0 0") {
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ' ') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  };
  const auto d = split(diag), o = split(off);
  return "inertia_params { mass = " + std::to_string(mass) + " CoM = (" + com + ") Ix = " + d[0] + " Iy = " + d[1] +
         " Iz = " + d[2] + " Ixy = " + o[0] + " Ixz = " + o[1] + " Iyz = " + o[2] + " }";
}

inline std::string zero_inertia() { return inertia(0.0, "0, 0, 0", "0 0 0", "0 0 0"); }

struct DocBuilder {
  std::string name = "Test";
  std::string base_name = "base";
  bool floating = false;
  std::string base_inertia = zero_inertia();
  std::string base_extra;
  std::vector<std::string> links;
  std::vector<std::string> joints;

  DocBuilder& link(const std::string& n, const std::string& children = "", const std::string& in = inertia(),
                   bool is_virtual = false, const std::string& extra = "") {
    std::string s = std::string(is_virtual ? "virtual_link " : "link ") + n + " {\n  " + in + "\n";
    if (!children.empty()) s += "  children { " + children + " }\n";
    s += extra + "}\n";
    links.push_back(s);
    return *this;
  }
  DocBuilder& joint(const std::string& n, char kind, const std::string& axis, const std::string& t = "0, 0, 0",
                    const std::string& r = "0, 0, 0") {
    joints.push_back(std::string(kind == 'p' ? "p_joint " : "r_joint ") + n + " {\n  axis = " + axis +
                     "\n  ref_frame { translation = (" + t + ") rotation = (" + r + ") }\n}\n");
    return *this;
  }
  std::string text(const std::string& base_children) const {
    std::string s = "Robot " + name + " {\nRobotBase " + base_name + (floating ? " floating" : "") + " {\n  " +
                    base_inertia + "\n" + base_extra;
    if (!base_children.empty()) s += "  children { " + base_children + " }\n";
    s += "}\n";
    for (const auto& l : links) s += l;
    for (const auto& j : joints) s += j;
    return s + "}\n";
  }
};

}  // namespace testing
