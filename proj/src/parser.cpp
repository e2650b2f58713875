#include "robodsl/parser.hpp"

#include "robodsl/lexer.hpp"

namespace robodsl {

namespace {

struct SyntaxError {};

bool is_decl_keyword(const Token& t) {
  return t.kind == TokenKind::keyword &&
         (t.text == "RobotBase" || t.text == "link" || t.text == "virtual_link" || t.text == "r_joint" ||
          t.text == "p_joint");
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::identifier: return "identifier '" + std::string(t.text) + "'";
    case TokenKind::keyword: return "keyword '" + std::string(t.text) + "'";
    case TokenKind::number: return "number '" + std::string(t.text) + "'";
    default: return token_kind_name(t.kind);
  }
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::string& file, std::vector<Diagnostic>& diags)
      : toks_(std::move(tokens)), file_(file), diags_(diags) {}

  ast::Document document() {
    ast::Document doc;
    doc.span = peek().span;
    try {
      expect_keyword("Robot");
      doc.robot_name = ident();
      expect(TokenKind::lbrace);
    } catch (const SyntaxError&) {
      sync();
    }

    enum class Stage { base, links, joints } stage = Stage::base;
    bool have_base = false;
    bool closed = false;
    while (!closed) {
      const Token& t = peek();
      if (is_decl_keyword(t)) {
        try {
          if (t.text == "RobotBase") {
            if (have_base)
              report(t, "only one RobotBase may be declared");
            else if (stage != Stage::base)
              report(t, "RobotBase must be declared before any link or joint");
            doc.base = base_decl();
            have_base = true;
            if (stage == Stage::base) stage = Stage::links;
          } else if (t.text == "link" || t.text == "virtual_link") {
            if (stage == Stage::joints) report(t, "links must be declared before joints");
            if (stage == Stage::base && !have_base)
              report(t, "expected 'RobotBase' before the first link");
            doc.links.push_back(link_decl());
            if (stage == Stage::base) stage = Stage::links;
          } else {
            if (!have_base && stage == Stage::base)
              report(t, "expected 'RobotBase' before the first joint");
            doc.joints.push_back(joint_decl());
            stage = Stage::joints;
          }
        } catch (const SyntaxError&) {
          sync();
        }
      } else if (t.kind == TokenKind::rbrace) {
        advance();
        closed = true;
      } else if (t.kind == TokenKind::end_of_file) {
        if (!had_syntax_error_) report(t, "expected '}' to close the Robot block, found end of file");
        break;
      } else {
        report(t, "expected one of 'RobotBase', 'link', 'virtual_link', 'r_joint', 'p_joint', '}', found " +
                      describe(t));
        advance();
        sync();
      }
    }
    if (closed && peek().kind != TokenKind::end_of_file)
      report(peek(), "expected end of file after the Robot block, found " + describe(peek()));
    if (!have_base && !had_syntax_error_)
      diags_.push_back({Severity::error, "syntax-error", "missing RobotBase declaration",
                        loc(doc.robot_name.span.line ? doc.robot_name.span : doc.span)});
    return doc;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  SourceLocation loc(ast::Span s) const { return {file_, s.line, s.column}; }

  void report(const Token& at, const std::string& message) {
    had_syntax_error_ = true;
    diags_.push_back({Severity::error, "syntax-error", message, loc(at.span)});
  }

  [[noreturn]] void fail(const std::string& expected) {
    report(peek(), "expected " + expected + ", found " + describe(peek()));
    throw SyntaxError{};
  }

  void sync() {
    while (peek().kind != TokenKind::end_of_file && !is_decl_keyword(peek())) advance();
  }

  const Token& expect(TokenKind kind) {
    if (peek().kind != kind) fail(token_kind_name(kind));
    return advance();
  }

  const Token& expect_keyword(std::string_view kw) {
    if (peek().kind != TokenKind::keyword || peek().text != kw) fail("'" + std::string(kw) + "'");
    return advance();
  }

  bool accept_keyword(std::string_view kw) {
    if (peek().kind == TokenKind::keyword && peek().text == kw) {
      advance();
      return true;
    }
    return false;
  }

  bool at_keyword(std::string_view kw) const {
    return peek().kind == TokenKind::keyword && peek().text == kw;
  }

  ast::Ident ident() {
    if (peek().kind != TokenKind::identifier) fail("identifier");
    const Token& t = advance();
    return {std::string(t.text), t.span};
  }

  ast::Number number() {
    if (peek().kind != TokenKind::number) fail("number");
    const Token& t = advance();
    return {t.number, t.span};
  }

  ast::Number field(std::string_view name) {
    expect_keyword(name);
    expect(TokenKind::equals);
    return number();
  }

  ast::Vec3Node vec3() {
    ast::Vec3Node v;
    v.span = expect(TokenKind::lparen).span;
    v.values[0] = number();
    expect(TokenKind::comma);
    v.values[1] = number();
    expect(TokenKind::comma);
    v.values[2] = number();
    expect(TokenKind::rparen);
    return v;
  }

  ast::InertiaParamsNode inertia() {
    ast::InertiaParamsNode n;
    n.span = expect_keyword("inertia_params").span;
    expect(TokenKind::lbrace);
    n.mass = field("mass");
    expect_keyword("CoM");
    expect(TokenKind::equals);
    n.com = vec3();
    static constexpr std::string_view kNames[6] = {"Ix", "Iy", "Iz", "Ixy", "Ixz", "Iyz"};
    for (int i = 0; i < 6; ++i) n.inertia[i] = field(kNames[i]);
    expect(TokenKind::rbrace);
    return n;
  }

  ast::RefFrameNode ref_frame() {
    ast::RefFrameNode n;
    n.span = expect_keyword("ref_frame").span;
    expect(TokenKind::lbrace);
    expect_keyword("translation");
    expect(TokenKind::equals);
    n.translation = vec3();
    expect_keyword("rotation");
    expect(TokenKind::equals);
    n.rotation = vec3();
    expect(TokenKind::rbrace);
    return n;
  }

  ast::ChildrenListNode children() {
    ast::ChildrenListNode n;
    n.span = expect_keyword("children").span;
    expect(TokenKind::lbrace);
    while (peek().kind != TokenKind::rbrace) {
      if (peek().kind != TokenKind::identifier) fail("identifier or '}'");
      ast::ChildEntry e;
      e.child = ident();
      expect_keyword("via");
      e.joint = ident();
      n.entries.push_back(std::move(e));
    }
    advance();
    return n;
  }

  ast::FramesNode frames() {
    ast::FramesNode n;
    n.span = expect_keyword("frames").span;
    expect(TokenKind::lbrace);
    while (peek().kind != TokenKind::rbrace) {
      if (peek().kind != TokenKind::identifier) fail("identifier or '}'");
      ast::FrameDecl f;
      f.name = ident();
      f.frame = ref_frame();
      n.frames.push_back(std::move(f));
    }
    advance();
    return n;
  }

  template <class Decl>
  void link_body(Decl& d) {
    expect(TokenKind::lbrace);
    d.inertia = inertia();
    bool placement_allowed = false;
    if constexpr (requires { d.placement; }) {
      placement_allowed = true;
      if (at_keyword("ref_frame")) {
        d.placement = ref_frame();
        placement_allowed = false;
      }
    }
    if (at_keyword("children")) d.children = children();
    if (at_keyword("frames")) d.frames = frames();
    if (peek().kind != TokenKind::rbrace) {
      if (d.frames) fail("'}'");
      if (d.children) fail("'frames' or '}'");
      fail(placement_allowed ? "one of 'ref_frame', 'children', 'frames', '}'"
                             : "one of 'children', 'frames', '}'");
    }
    advance();
  }

  ast::BaseDecl base_decl() {
    ast::BaseDecl d;
    d.span = expect_keyword("RobotBase").span;
    d.name = ident();
    d.floating = accept_keyword("floating");
    link_body(d);
    return d;
  }

  ast::LinkDecl link_decl() {
    ast::LinkDecl d;
    d.span = peek().span;
    d.is_virtual = peek().text == "virtual_link";
    advance();
    d.name = ident();
    link_body(d);
    return d;
  }

  ast::JointDecl joint_decl() {
    ast::JointDecl d;
    d.span = peek().span;
    d.kind = peek().text == "r_joint" ? JointKind::revolute : JointKind::prismatic;
    advance();
    d.name = ident();
    expect(TokenKind::lbrace);
    expect_keyword("axis");
    expect(TokenKind::equals);
    const Token& a = peek();
    if (a.kind != TokenKind::identifier || (a.text != "x" && a.text != "y" && a.text != "z"))
      fail("axis 'x', 'y' or 'z'");
    d.axis = a.text == "x" ? Axis::x : a.text == "y" ? Axis::y : Axis::z;
    d.axis_span = a.span;
    advance();
    d.placement = ref_frame();
    expect(TokenKind::rbrace);
    return d;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::string& file_;
  std::vector<Diagnostic>& diags_;
  bool had_syntax_error_ = false;
};

}  // namespace

ParseResult parse(std::string_view source, const std::string& file) {
  ParseResult result;
  auto tokens = tokenize(source, file, result.diagnostics);
  Parser parser(std::move(tokens), file, result.diagnostics);
  auto doc = parser.document();
  sort_by_location(result.diagnostics);
  if (!has_errors(result.diagnostics)) result.document = std::move(doc);
  return result;
}

}  // namespace robodsl
