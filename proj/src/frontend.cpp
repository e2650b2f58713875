#include "robodsl/frontend.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "robodsl/parser.hpp"

namespace robodsl {

namespace {

Vec3 to_vec(const ast::Vec3Node& v) { return {v.values[0].value, v.values[1].value, v.values[2].value}; }

SpatialInertia to_inertia(const ast::InertiaParamsNode& n) {
  SpatialInertia in;
  in.mass = n.mass.value;
  in.com = to_vec(n.com);
  const double ixx = n.inertia[0].value, iyy = n.inertia[1].value, izz = n.inertia[2].value;
  const double ixy = n.inertia[3].value, ixz = n.inertia[4].value, iyz = n.inertia[5].value;
  in.rot_inertia << ixx, ixy, ixz,
                    ixy, iyy, iyz,
                    ixz, iyz, izz;
  return in;
}

SpatialTransform to_transform(const ast::RefFrameNode& n) {
  return placement_from_xyz(to_vec(n.translation), to_vec(n.rotation));
}

class Builder {
 public:
  Builder(const ast::Document& doc, const std::string& file) : doc_(doc), file_(file) {}

  ModelResult run() {
    ModelCandidate c;
    c.name = doc_.robot_name.text;

    const auto& b = doc_.base;
    c.base.name = b.name.text;
    c.base.mobility = b.floating ? BaseMobility::floating : BaseMobility::fixed;
    c.base.inertia = to_inertia(b.inertia);
    c.base.location = loc(b.name.span);
    c.base.inertia_location = loc(b.inertia.span);
    if (b.placement) {
      c.base.placement = to_transform(*b.placement);
      c.base.placement_location = loc(b.placement->span);
    }
    add_frames(b.frames, c.base.extra_frames, c.base.frame_locations);
    link_names_.insert(b.name.text);

    std::vector<const ast::LinkDecl*> kept_links;
    for (const auto& l : doc_.links) {
      if (!link_names_.insert(l.name.text).second) {
        duplicate(l.name, "link");
        continue;
      }
      kept_links.push_back(&l);
      CandidateLink cl;
      cl.name = l.name.text;
      cl.kind = l.is_virtual ? LinkKind::virtual_link : LinkKind::chain;
      cl.inertia = to_inertia(l.inertia);
      cl.location = loc(l.name.span);
      cl.inertia_location = loc(l.inertia.span);
      add_frames(l.frames, cl.extra_frames, cl.frame_locations);
      c.links.push_back(std::move(cl));
    }
    for (const auto& j : doc_.joints) {
      if (!joint_names_.insert(j.name.text).second) {
        duplicate(j.name, "joint");
        continue;
      }
      c.joints.push_back({j.name.text, j.kind, j.axis, to_transform(j.placement), loc(j.name.span)});
    }

    add_connections(b.name.text, b.children, c.connections);
    for (const auto* l : kept_links) add_connections(l->name.text, l->children, c.connections);

    ModelResult result;
    if (has_errors(diags_)) {
      // Entries with unresolved names were dropped, so connectivity findings
      // would be consequences of those errors rather than new ones.
      for (auto& d : validate(c)) {
        if (d.code == "unconnected-joint" || d.code == "unreachable-link" || d.code == "joint-order") continue;
        diags_.push_back(std::move(d));
      }
    } else {
      result = RobotModel::create(c);
    }
    diags_.insert(diags_.end(), result.diagnostics.begin(), result.diagnostics.end());
    result.diagnostics = std::move(diags_);
    sort_by_location(result.diagnostics);
    return result;
  }

 private:
  SourceLocation loc(ast::Span s) const { return {file_, s.line, s.column}; }

  void duplicate(const ast::Ident& id, const char* what) {
    diags_.push_back({Severity::error, "duplicate-declaration",
                      std::string(what) + " '" + id.text + "' is already declared", loc(id.span)});
  }

  void add_frames(const std::optional<ast::FramesNode>& frames, std::vector<NamedFrame>& out,
                  std::vector<SourceLocation>& locs) {
    if (!frames) return;
    for (const auto& f : frames->frames) {
      out.push_back({f.name.text, to_transform(f.frame)});
      locs.push_back(loc(f.name.span));
    }
  }

  void add_connections(const std::string& parent, const std::optional<ast::ChildrenListNode>& children,
                       std::vector<CandidateConnection>& out) {
    if (!children) return;
    for (const auto& e : children->entries) {
      bool ok = true;
      if (!link_names_.count(e.child.text)) {
        diags_.push_back({Severity::error, "unresolved-name", "no link named '" + e.child.text + "'",
                          loc(e.child.span)});
        ok = false;
      }
      if (!joint_names_.count(e.joint.text)) {
        diags_.push_back({Severity::error, "unresolved-name", "no joint named '" + e.joint.text + "'",
                          loc(e.joint.span)});
        ok = false;
      }
      if (ok) out.push_back({parent, e.child.text, e.joint.text, loc(e.child.span)});
    }
  }

  const ast::Document& doc_;
  const std::string& file_;
  std::set<std::string> link_names_;
  std::set<std::string> joint_names_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

ModelResult build_model(const AstDocument& doc, const std::string& file) { return Builder(doc, file).run(); }

ModelResult load_model(std::string_view source, const std::string& file) {
  auto parsed = parse(source, file);
  if (!parsed.document) return {std::nullopt, std::move(parsed.diagnostics)};
  auto result = build_model(*parsed.document, file);
  // Parse warnings, if any, come first.
  parsed.diagnostics.insert(parsed.diagnostics.end(), result.diagnostics.begin(), result.diagnostics.end());
  result.diagnostics = std::move(parsed.diagnostics);
  sort_by_location(result.diagnostics);
  return result;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading '" + path.string() + "'");
  return ss.str();
}

ModelResult load_model_file(const std::filesystem::path& path) {
  return load_model(read_text_file(path), path.string());
}

}  // namespace robodsl
