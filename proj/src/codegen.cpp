#include "robodsl/codegen.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>

namespace robodsl {

namespace {

constexpr const char* kMotionComp[6] = {"wx", "wy", "wz", "vx", "vy", "vz"};
constexpr const char* kForceComp[6] = {"nx", "ny", "nz", "fx", "fy", "fz"};
constexpr const char* kAxisComp[3] = {"x", "y", "z"};

// ---------------------------------------------------------------------------
// Emission plan: single-assignment scalar statements over named atoms.

struct Term {
  double coeff = 1.0;
  std::vector<std::string> factors;
};
using Expr = std::vector<Term>;

struct Atom {
  std::string name;
  bool negative = false;
};
using Slot = std::optional<Atom>;  // empty = structurally zero
using SymVec = std::array<Slot, 6>;
using ExprVec = std::array<Expr, 6>;

/// A model constant: folded into a literal, or referenced by name.
struct Coef {
  double literal = 1.0;
  std::vector<std::string> names;
};

Coef operator*(const Coef& a, const Coef& b) {
  Coef c{a.literal * b.literal, a.names};
  c.names.insert(c.names.end(), b.names.begin(), b.names.end());
  return c;
}

void add(Expr& e, double sign, const Slot& a) {
  if (!a) return;
  e.push_back({a->negative ? -sign : sign, {a->name}});
}

void add(Expr& e, double sign, const Slot& a, const Slot& b) {
  if (!a || !b) return;
  const bool neg = a->negative != b->negative;
  e.push_back({neg ? -sign : sign, {a->name, b->name}});
}

void add(Expr& e, double sign, const Coef& c, const Slot& a) {
  if (!a || c.literal == 0.0) return;
  Term t{(a->negative ? -sign : sign) * c.literal, c.names};
  t.factors.push_back(a->name);
  e.push_back(std::move(t));
}


enum class Pass { prologue, forward, backward };

struct Statement {
  enum class Kind { define, call, output } kind = Kind::define;
  std::string target;
  Expr expr;
  const char* func = nullptr;
  std::string arg;
  std::string group;
};

struct Block {
  Pass pass = Pass::prologue;
  std::string title;
  std::vector<Statement> stmts;
};

class Plan {
 public:
  explicit Plan(bool fold) : fold_(fold) {}

  void begin_block(Pass pass, std::string title) {
    blocks_.push_back({pass, std::move(title), {}});
    group_.clear();
  }
  void group(std::string g) { group_ = std::move(g); }

  /// Materializes `e`. Zero and signed single-atom expressions become aliases.
  Slot define(const std::string& name, Expr e) {
    if (e.empty()) return std::nullopt;
    if (e.size() == 1 && e[0].factors.size() == 1 && std::abs(e[0].coeff) == 1.0)
      return Atom{e[0].factors[0], e[0].coeff < 0.0};
    return define_named(name, std::move(e));
  }

  Atom define_named(const std::string& name, Expr e) {
    push({Statement::Kind::define, name, std::move(e), nullptr, {}, group_});
    return {name, false};
  }

  Atom call(const std::string& name, const char* func, const std::string& arg) {
    push({Statement::Kind::call, name, {}, func, arg, group_});
    return {name, false};
  }

  void output(const std::string& lvalue, Expr e) {
    push({Statement::Kind::output, lvalue, std::move(e), nullptr, {}, group_});
  }

  Coef constant(const std::string& name, double value) {
    if (fold_) return {value, {}};
    if (!constants_.count(name)) {
      constants_.insert(name);
      define_named(name, Expr{{value, {}}});
    }
    return {1.0, {name}};
  }

  SymVec define_vec(const std::string& qty, const std::string& owner, const ExprVec& e,
                    const char* const* comps) {
    SymVec out;
    for (int i = 0; i < 6; ++i) out[i] = define(qty + "_" + owner + "_" + comps[i], e[i]);
    return out;
  }

  std::vector<Block>& blocks() { return blocks_; }

 private:
  void push(Statement s) { blocks_.back().stmts.push_back(std::move(s)); }

  bool fold_;
  std::vector<Block> blocks_;
  std::string group_;
  std::set<std::string> constants_;
};

// Removes statements whose targets are never read. Outputs are roots.
void eliminate_dead_code(std::vector<Block>& blocks) {
  std::unordered_set<std::string> used;
  for (auto b = blocks.rbegin(); b != blocks.rend(); ++b) {
    std::vector<Statement> kept;
    for (auto s = b->stmts.rbegin(); s != b->stmts.rend(); ++s) {
      if (s->kind != Statement::Kind::output && !used.count(s->target)) continue;
      if (s->kind == Statement::Kind::call) used.insert(s->arg);
      for (const auto& t : s->expr)
        for (const auto& f : t.factors) used.insert(f);
      kept.push_back(std::move(*s));
    }
    std::reverse(kept.begin(), kept.end());
    b->stmts = std::move(kept);
  }
}

FlopCount count(const Statement& s) {
  FlopCount c;
  if (s.kind == Statement::Kind::call || s.expr.empty()) return c;
  c.add = static_cast<int>(s.expr.size()) - 1;
  for (const auto& t : s.expr) {
    if (t.factors.empty()) continue;
    c.mul += static_cast<int>(t.factors.size()) - 1;
    if (std::abs(t.coeff) != 1.0) ++c.mul;
  }
  return c;
}

FlopEstimate count(const std::vector<Block>& blocks) {
  FlopEstimate est;
  for (const auto& b : blocks) {
    FlopCount& dst = b.pass == Pass::backward ? est.backward : est.forward;
    for (const auto& s : b.stmts) {
      const FlopCount c = count(s);
      dst.mul += c.mul;
      dst.add += c.add;
    }
  }
  return est;
}

// ---------------------------------------------------------------------------
// Printing.

std::string literal(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string term_body(const Term& t) {
  std::string out;
  const double mag = std::abs(t.coeff);
  if (t.factors.empty() || mag != 1.0) out = literal(mag);
  for (const auto& f : t.factors) {
    if (!out.empty()) out += " * ";
    out += f;
  }
  return out;
}

std::string expr_text(const Expr& e) {
  if (e.empty()) return "0.0";
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const bool neg = std::signbit(e[i].coeff);
    if (i == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += term_body(e[i]);
  }
  return out;
}

std::string statement_text(const Statement& s, Target target) {
  switch (s.kind) {
    case Statement::Kind::define:
      return "const double " + s.target + " = " + expr_text(s.expr) + ";";
    case Statement::Kind::call:
      return "const double " + s.target + " = " + (target == Target::self_language ? "std::" : "") + s.func +
             "(" + s.arg + ");";
    case Statement::Kind::output:
      return s.target + " = " + expr_text(s.expr) + ";";
  }
  return {};
}

void print_blocks(std::string& out, const std::vector<Block>& blocks, const GenOptions& opts,
                  const std::string& indent) {
  bool first = true;
  for (const auto& b : blocks) {
    if (b.pass == Pass::prologue && b.stmts.empty()) continue;
    if (!first) out += '\n';
    first = false;
    const char* pass = b.pass == Pass::forward ? "forward" : b.pass == Pass::backward ? "backward" : "prologue";
    out += indent + "// " + pass + " " + b.title + "\n";
    std::string group;
    for (const auto& s : b.stmts) {
      if (opts.emit_comments && s.group != group && !s.group.empty()) out += indent + "// " + s.group + "\n";
      group = s.group;
      out += indent + statement_text(s, opts.target) + "\n";
    }
  }
}

// ---------------------------------------------------------------------------
// Inverse dynamics emission.

class RneaEmitter {
 public:
  RneaEmitter(const RobotModel& model, const GenOptions& opts)
      : model_(model), plan_(opts.precompute_constants), fold_(opts.precompute_constants) {}

  std::vector<Block> run() {
    const auto& order = model_.dof_order();
    const std::size_t n = order.size();
    std::vector<int> position(model_.joints().size(), -1);
    for (std::size_t i = 0; i < n; ++i) position[order[i]] = static_cast<int>(i);
    parent_.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& conn = model_.connection(order[i]);
      if (conn.predecessor) parent_[i] = position[model_.parent_joint_of(*conn.predecessor)];
    }

    plan_.begin_block(Pass::prologue, "gravity");
    plan_.group("base acceleration is -g");
    SymVec base_acc;
    for (int i = 0; i < 3; ++i) {
      const Atom g = plan_.define_named(std::string("g_") + kAxisComp[i], Expr{{1.0, {"g[" + std::to_string(i) + "]"}}});
      base_acc[3 + i] = Atom{g.name, true};
    }

    v_.resize(n);
    a_.resize(n);
    f_.resize(n);
    trig_.resize(n);
    for (std::size_t i = 0; i < n; ++i) forward(i, base_acc);
    contributions_.assign(n, {});
    for (std::size_t i = n; i-- > 0;) backward(i);
    return std::move(plan_.blocks());
  }

 private:
  struct JointVars {
    Slot q, c, s;
  };

  const Joint& joint(std::size_t i) const { return model_.joints()[model_.dof_order()[i]]; }
  const Link& link(std::size_t i) const {
    return model_.links()[model_.connection(model_.dof_order()[i]).successor];
  }
  std::string title(std::size_t i) const { return link(i).name + " via " + joint(i).name; }

  Expr load(const char* array, std::size_t i) {
    return Expr{{1.0, {std::string(array) + "[" + std::to_string(i) + "]"}}};
  }

  Coef rot(const Joint& j, int r, int c) {
    return plan_.constant("kE_" + j.name + "_" + std::to_string(r) + std::to_string(c), j.placement.rotation(r, c));
  }
  Coef trans(const Joint& j, int i) {
    return plan_.constant("kr_" + j.name + "_" + kAxisComp[i], j.placement.translation[i]);
  }

  static bool all_zero(const SymVec& v) {
    return std::none_of(v.begin(), v.end(), [](const Slot& s) { return s.has_value(); });
  }

  // Constant placement applied to a motion vector: out = E * (w, v - r x w).
  SymVec placement_motion(const Joint& j, const SymVec& in, const std::string& qty, const std::string& owner) {
    if (all_zero(in)) return {};
    SymVec shifted = in;
    for (int k = 0; k < 3; ++k) {
      const int a = (k + 1) % 3, b = (k + 2) % 3;
      Expr e;
      add(e, 1.0, in[3 + k]);
      add(e, -1.0, trans(j, a), in[b]);
      add(e, 1.0, trans(j, b), in[a]);
      shifted[3 + k] = plan_.define(qty + "sh_" + owner + "_" + kMotionComp[3 + k], std::move(e));
    }
    ExprVec out;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        add(out[r], 1.0, rot(j, r, c), shifted[c]);
        add(out[3 + r], 1.0, rot(j, r, c), shifted[3 + c]);
      }
    return plan_.define_vec(qty + "J", owner, out, kMotionComp);
  }

  // Transpose of the constant placement applied to a force vector:
  // out = (E^T n + r x E^T f, E^T f).
  SymVec placement_force_transpose(const Joint& j, const SymVec& in, const std::string& owner) {
    if (all_zero(in)) return {};
    ExprVec rotated;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        add(rotated[r], 1.0, rot(j, c, r), in[c]);
        add(rotated[3 + r], 1.0, rot(j, c, r), in[3 + c]);
      }
    SymVec u;
    for (int k = 0; k < 6; ++k) u[k] = plan_.define(std::string(k < 3 ? "fu_" : "fw_") + owner + "_" + kForceComp[k], rotated[k]);
    ExprVec out;
    for (int k = 0; k < 3; ++k) {
      const int a = (k + 1) % 3, b = (k + 2) % 3;
      add(out[k], 1.0, u[k]);
      add(out[k], 1.0, trans(j, a), u[3 + b]);
      add(out[k], -1.0, trans(j, b), u[3 + a]);
      add(out[3 + k], 1.0, u[3 + k]);
    }
    return plan_.define_vec("fp", owner, out, kForceComp);
  }

  // Joint transform ^sX_J applied to a motion vector.
  ExprVec joint_motion(const Joint& j, const JointVars& jv, const SymVec& in) {
    ExprVec out;
    const int k = static_cast<int>(j.subspace.axis);
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    if (j.kind == JointKind::revolute) {
      for (int off : {0, 3}) {
        add(out[off + k], 1.0, in[off + k]);
        add(out[off + a], 1.0, jv.c, in[off + a]);
        add(out[off + a], 1.0, jv.s, in[off + b]);
        add(out[off + b], -1.0, jv.s, in[off + a]);
        add(out[off + b], 1.0, jv.c, in[off + b]);
      }
    } else {
      for (int i = 0; i < 6; ++i) add(out[i], 1.0, in[i]);
      add(out[3 + a], 1.0, jv.q, in[b]);
      add(out[3 + b], -1.0, jv.q, in[a]);
    }
    return out;
  }

  // Transpose of ^sX_J applied to a force vector.
  ExprVec joint_force_transpose(const Joint& j, const JointVars& jv, const SymVec& in) {
    ExprVec out;
    const int k = static_cast<int>(j.subspace.axis);
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    if (j.kind == JointKind::revolute) {
      for (int off : {0, 3}) {
        add(out[off + k], 1.0, in[off + k]);
        add(out[off + a], 1.0, jv.c, in[off + a]);
        add(out[off + a], -1.0, jv.s, in[off + b]);
        add(out[off + b], 1.0, jv.s, in[off + a]);
        add(out[off + b], 1.0, jv.c, in[off + b]);
      }
    } else {
      for (int i = 0; i < 6; ++i) add(out[i], 1.0, in[i]);
      add(out[a], -1.0, jv.q, in[3 + b]);
      add(out[b], 1.0, jv.q, in[3 + a]);
    }
    return out;
  }

  // Spatial inertia (about the link origin) times a motion vector.
  ExprVec inertia_times(const Link& l, const SymVec& x) {
    const auto& in = l.inertia;
    const Coef m = plan_.constant("km_" + l.name, in.mass);
    Coef mc[3];
    for (int i = 0; i < 3; ++i) {
      if (fold_)
        mc[i] = Coef{in.mass * in.com[i], {}};
      else
        mc[i] = m * plan_.constant("kc_" + l.name + "_" + kAxisComp[i], in.com[i]);
    }
    static constexpr const char* kIdx[3][3] = {{"xx", "xy", "xz"}, {"xy", "yy", "yz"}, {"xz", "yz", "zz"}};
    ExprVec out;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c)
        add(out[r], 1.0, plan_.constant("kI_" + l.name + "_" + kIdx[r][c], in.rot_inertia(r, c)), x[c]);
      const int a = (r + 1) % 3, b = (r + 2) % 3;
      add(out[r], 1.0, mc[a], x[3 + b]);
      add(out[r], -1.0, mc[b], x[3 + a]);
      add(out[3 + r], 1.0, m, x[3 + r]);
      add(out[3 + r], -1.0, mc[a], x[b]);
      add(out[3 + r], 1.0, mc[b], x[a]);
    }
    return out;
  }

  static void add_cross(Expr* out, const Slot* lhs, const Slot* rhs) {
    for (int r = 0; r < 3; ++r) {
      const int a = (r + 1) % 3, b = (r + 2) % 3;
      add(out[r], 1.0, lhs[a], rhs[b]);
      add(out[r], -1.0, lhs[b], rhs[a]);
    }
  }

  void forward(std::size_t i, const SymVec& base_acc) {
    const Joint& j = joint(i);
    const Link& l = link(i);
    const int s = j.subspace.index();
    plan_.begin_block(Pass::forward, title(i));

    plan_.group("joint state");
    JointVars jv;
    jv.q = plan_.define_named("q_" + j.name, load("q", i));
    const Slot qd = plan_.define_named("qd_" + j.name, load("qd", i));
    const Slot qdd = plan_.define_named("qdd_" + j.name, load("qdd", i));
    if (j.kind == JointKind::revolute) {
      jv.c = plan_.call("c_" + j.name, "cos", jv.q->name);
      jv.s = plan_.call("s_" + j.name, "sin", jv.q->name);
    }
    trig_[i] = jv;

    const SymVec parent_v = parent_[i] < 0 ? SymVec{} : v_[parent_[i]];
    const SymVec parent_a = parent_[i] < 0 ? base_acc : a_[parent_[i]];

    plan_.group("velocity");
    ExprVec ve = joint_motion(j, jv, placement_motion(j, parent_v, "v", l.name));
    add(ve[s], 1.0, qd);
    v_[i] = plan_.define_vec("v", l.name, ve, kMotionComp);

    plan_.group("acceleration");
    ExprVec ae = joint_motion(j, jv, placement_motion(j, parent_a, "a", l.name));
    add(ae[s], 1.0, qdd);
    // v x (S qd): S qd has a single non-zero entry at index s.
    const int k = static_cast<int>(j.subspace.axis);
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    const auto& v = v_[i];
    if (j.kind == JointKind::revolute) {
      add(ae[a], 1.0, v[b], qd);
      add(ae[b], -1.0, v[a], qd);
      add(ae[3 + a], 1.0, v[3 + b], qd);
      add(ae[3 + b], -1.0, v[3 + a], qd);
    } else {
      add(ae[3 + a], 1.0, v[b], qd);
      add(ae[3 + b], -1.0, v[a], qd);
    }
    a_[i] = plan_.define_vec("a", l.name, ae, kMotionComp);

    plan_.group("force");
    const SymVec h = plan_.define_vec("h", l.name, inertia_times(l, v), kForceComp);
    ExprVec fe = inertia_times(l, a_[i]);
    add_cross(fe.data(), v.data(), h.data());          // w x h_n
    add_cross(fe.data(), v.data() + 3, h.data() + 3);  // v x h_f
    add_cross(fe.data() + 3, v.data(), h.data() + 3);  // w x h_f
    f_[i] = plan_.define_vec("f", l.name, fe, kForceComp);
  }

  void backward(std::size_t i) {
    const Joint& j = joint(i);
    const Link& l = link(i);
    plan_.begin_block(Pass::backward, title(i));

    SymVec ft = f_[i];
    if (!contributions_[i].empty()) {
      plan_.group("net force including children");
      ExprVec sum;
      for (int k = 0; k < 6; ++k) {
        add(sum[k], 1.0, f_[i][k]);
        for (const auto& c : contributions_[i]) add(sum[k], 1.0, c[k]);
      }
      ft = plan_.define_vec("ft", l.name, sum, kForceComp);
    }

    plan_.group("joint force");
    Expr t;
    add(t, 1.0, ft[j.subspace.index()]);
    const Atom tau = plan_.define_named("tau_" + j.name, std::move(t));
    plan_.output("tau[" + std::to_string(i) + "]", Expr{{1.0, {tau.name}}});

    if (parent_[i] >= 0) {
      plan_.group("propagate to the predecessor link");
      const SymVec fj = plan_.define_vec("fj", l.name, joint_force_transpose(j, trig_[i], ft), kForceComp);
      contributions_[parent_[i]].push_back(placement_force_transpose(j, fj, l.name));
    }
  }

  const RobotModel& model_;
  Plan plan_;
  bool fold_;
  std::vector<int> parent_;
  std::vector<SymVec> v_, a_, f_;
  std::vector<JointVars> trig_;
  std::vector<std::vector<SymVec>> contributions_;
};

// ---------------------------------------------------------------------------

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "alignas", "alignof", "and", "and_eq", "asm", "auto", "bitand", "bitor", "bool", "break", "case",
      "catch", "char", "char8_t", "char16_t", "char32_t", "class", "co_await", "co_return", "co_yield",
      "compl", "concept", "const", "consteval", "constexpr", "constinit", "const_cast", "continue",
      "decltype", "default", "delete", "do", "double", "dynamic_cast", "else", "enum", "explicit",
      "export", "extern", "false", "float", "for", "friend", "goto", "if", "inline", "int", "long",
      "mutable", "namespace", "new", "noexcept", "not", "not_eq", "nullptr", "operator", "or", "or_eq",
      "private", "protected", "public", "register", "reinterpret_cast", "requires", "restrict", "return",
      "short", "signed", "sizeof", "static", "static_assert", "static_cast", "struct", "switch", "template",
      "this", "thread_local", "throw", "true", "try", "typedef", "typeid", "typename", "union", "unsigned",
      "using", "virtual", "void", "volatile", "wchar_t", "while", "xor", "xor_eq", "std", "_Bool",
      "_Complex", "_Imaginary"};
  return words;
}

std::string header_comment(const RobotModel& model, const GenOptions& opts) {
  std::string out;
  out += std::string("// Generated by robodsl ") + kToolchainVersion + ". Do not edit.\n";
  out += "// model: " + model.name() + "\n";
  out += "// fingerprint: " + format_fingerprint(model.fingerprint()) + "\n";
  out += std::string("// options: target=") + target_name(opts.target) +
         " precompute_constants=" + (opts.precompute_constants ? "on" : "off") +
         " emit_comments=" + (opts.emit_comments ? "on" : "off") + " namespace_prefix=" + opts.namespace_prefix +
         "\n";
  out += "// dof_order:";
  for (auto j : model.dof_order()) out += " " + model.joints()[j].name;
  out += "\n";
  return out;
}

[[noreturn]] void gen_error(std::string code, std::string message) {
  throw GenerationError(Diagnostic{Severity::error, std::move(code), std::move(message), {}});
}

GenOptions resolve(const RobotModel& model, GenOptions opts) {
  if (opts.namespace_prefix.empty()) opts.namespace_prefix = default_prefix(model.name());
  if (!is_valid_prefix(opts.namespace_prefix))
    gen_error("invalid-prefix", "'" + opts.namespace_prefix + "' is not a usable identifier for the " +
                                    target_name(opts.target) + " target");
  return opts;
}

std::vector<Block> build_plan(const RobotModel& model, const GenOptions& opts) {
  if (model.base().mobility == BaseMobility::floating)
    gen_error("unsupported-floating-base",
              "cannot generate code for '" + model.name() + "': base '" + model.base().name +
                  "' is floating, and floating-base dynamics generation is not supported (fixed-base models only)");
  auto blocks = RneaEmitter(model, opts).run();
  eliminate_dead_code(blocks);
  return blocks;
}

}  // namespace

const char* target_name(Target t) { return t == Target::self_language ? "self" : "c99"; }

std::string default_prefix(const std::string& robot_name) {
  std::string out;
  for (char c : robot_name) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (out.empty() || reserved_words().count(out)) out += "_model";
  return out;
}

bool is_valid_prefix(const std::string& p) {
  if (p.empty() || !(std::isalpha(static_cast<unsigned char>(p[0])) || p[0] == '_')) return false;
  for (char c : p)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  if (p.size() >= 2 && p[0] == '_' && (p[1] == '_' || std::isupper(static_cast<unsigned char>(p[1])))) return false;
  return !reserved_words().count(p);
}

bool TransformFoldPlan::rotation_is_identity() const {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (rotation[r * 3 + c] != (r == c ? EntryClass::one : EntryClass::zero)) return false;
  return true;
}

bool TransformFoldPlan::translation_is_zero() const {
  return std::all_of(translation.begin(), translation.end(), [](EntryClass e) { return e == EntryClass::zero; });
}

TransformFoldPlan fold_constant_transform(const SpatialTransform& x) {
  auto classify = [](double v) {
    if (v == 0.0) return EntryClass::zero;
    if (v == 1.0) return EntryClass::one;
    if (v == -1.0) return EntryClass::minus_one;
    return EntryClass::general;
  };
  TransformFoldPlan plan;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) plan.rotation[r * 3 + c] = classify(x.rotation(r, c));
  for (int i = 0; i < 3; ++i) plan.translation[i] = classify(x.translation[i]);
  return plan;
}

GeneratedProgram generate(const RobotModel& model, const GenOptions& requested) {
  const GenOptions opts = resolve(model, requested);
  const auto blocks = build_plan(model, opts);
  const bool self = opts.target == Target::self_language;
  const std::string& prefix = opts.namespace_prefix;

  GeneratedProgram prog;
  prog.model_fingerprint = model.fingerprint();
  prog.options_used = opts;
  prog.flops = count(blocks);
  prog.entry_symbol = self ? prefix + "::rnea" : prefix + "_rnea";

  // Locals must be distinct from each other and from the exported names.
  std::set<std::string> names = {"q", "qd", "qdd", "g", "tau"};
  const std::string exported = self ? "rnea" : prefix + "_rnea";
  for (const auto& b : blocks)
    for (const auto& s : b.stmts) {
      if (s.kind == Statement::Kind::output) continue;
      if (!names.insert(s.target).second || s.target == exported || s.target == prefix)
        gen_error("name-collision", "generated identifier '" + s.target + "' collides with another symbol");
    }

  bool uses[4] = {false, false, false, false};
  static constexpr const char* kParams[4] = {"q[", "qd[", "qdd[", "g["};
  for (const auto& b : blocks)
    for (const auto& s : b.stmts)
      for (const auto& t : s.expr)
        for (const auto& f : t.factors)
          for (int p = 0; p < 4; ++p)
            if (f.rfind(kParams[p], 0) == 0) uses[p] = true;

  const std::string head = header_comment(model, opts);
  const std::string signature =
      "void " + (self ? std::string("rnea") : prefix + "_rnea") +
      "(const double* q, const double* qd, const double* qdd, const double* g, double* tau)";
  const std::string fp_literal = format_fingerprint(model.fingerprint()) + "ULL";
  const std::string dof = std::to_string(model.dof_count());

  std::string body;
  static constexpr const char* kNames[4] = {"q", "qd", "qdd", "g"};
  for (int p = 0; p < 4; ++p)
    if (!uses[p]) body += std::string("    (void)") + kNames[p] + ";\n";
  if (model.dof_count() == 0) body += "    (void)tau;\n";
  if (!body.empty() && !blocks.empty()) body += '\n';
  print_blocks(body, blocks, opts, "    ");

  if (self) {
    prog.header_filename = prefix + "_rnea.hpp";
    prog.source_filename = prefix + "_rnea.cpp";
    prog.header_text = head + "\n#pragma once\n\n#include <cstdint>\n\nnamespace " + prefix + " {\n\n" +
                       "inline constexpr std::uint64_t kFingerprint = " + fp_literal + ";\n" +
                       "inline constexpr int kDof = " + dof + ";\n\n" + signature + ";\n\n}  // namespace " +
                       prefix + "\n";
    prog.source_text = head + "\n#include \"" + prog.header_filename + "\"\n\n#include <cmath>\n\nnamespace " +
                       prefix + " {\n\n" + signature + "\n{\n" + body + "}\n\n}  // namespace " + prefix + "\n";
  } else {
    std::string guard;
    for (char c : prefix) guard += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    prog.header_filename = prefix + "_rnea.h";
    prog.source_filename = prefix + "_rnea.c";
    prog.header_text = head + "\n#ifndef " + guard + "_RNEA_H\n#define " + guard + "_RNEA_H\n\n#define " + guard +
                       "_FINGERPRINT " + fp_literal + "\n#define " + guard + "_DOF " + dof +
                       "\n\n#ifdef __cplusplus\nextern \"C\" {\n#endif\n\n" + signature +
                       ";\n\n#ifdef __cplusplus\n}\n#endif\n\n#endif\n";
    prog.source_text = head + "\n#include \"" + prog.header_filename + "\"\n\n#include <math.h>\n\n" + signature +
                       "\n{\n" + body + "}\n";
  }
  return prog;
}

FlopEstimate emitted_flop_estimate(const RobotModel& model, const GenOptions& opts) {
  return count(build_plan(model, resolve(model, opts)));
}

std::string emit_transform_snippet(const SpatialTransform& placement, const GenOptions& opts) {
  Joint j{"X", JointKind::revolute, {}, placement};
  Plan plan(opts.precompute_constants);
  plan.begin_block(Pass::forward, "transform");
  SymVec in;
  for (int k = 0; k < 6; ++k) in[k] = Atom{std::string("in_") + kMotionComp[k], false};

  // Same arithmetic as the emitter's placement step, with named outputs.
  SymVec shifted = in;
  auto trans = [&](int i) { return plan.constant(std::string("kr_X_") + kAxisComp[i], placement.translation[i]); };
  auto rot = [&](int r, int c) {
    return plan.constant("kE_X_" + std::to_string(r) + std::to_string(c), placement.rotation(r, c));
  };
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    Expr e;
    add(e, 1.0, in[3 + k]);
    add(e, -1.0, trans(a), in[b]);
    add(e, 1.0, trans(b), in[a]);
    shifted[3 + k] = plan.define(std::string("sh_") + kMotionComp[3 + k], std::move(e));
  }
  for (int r = 0; r < 3; ++r) {
    Expr ang, lin;
    for (int c = 0; c < 3; ++c) {
      add(ang, 1.0, rot(r, c), shifted[c]);
      add(lin, 1.0, rot(r, c), shifted[3 + c]);
    }
    plan.output(std::string("out_") + kMotionComp[r], std::move(ang));
    plan.output(std::string("out_") + kMotionComp[3 + r], std::move(lin));
  }
  auto blocks = std::move(plan.blocks());
  eliminate_dead_code(blocks);
  std::string out;
  for (const auto& s : blocks.front().stmts) out += statement_text(s, opts.target) + "\n";
  return out;
}

}  // namespace robodsl
