#include "robodsl/lexer.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace robodsl {

namespace {

constexpr std::array<std::string_view, 23> kKeywords = {
    "Robot", "RobotBase", "floating", "link", "virtual_link", "r_joint", "p_joint", "axis",
    "inertia_params", "mass", "CoM", "Ix", "Iy", "Iz", "Ixy", "Ixz", "Iyz", "children", "via",
    "frames", "ref_frame", "translation", "rotation"};

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file, std::vector<Diagnostic>& diags)
      : src_(src), file_(file), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      const ast::Span span{line_, col_};
      const char c = src_[pos_];
      if (is_ident_start(c)) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
        const auto text = src_.substr(start, pos_ - start);
        out.push_back({is_keyword(text) ? TokenKind::keyword : TokenKind::identifier, text, 0.0, span});
        continue;
      }
      if (starts_number()) {
        out.push_back(lex_number(span));
        continue;
      }
      TokenKind kind;
      switch (c) {
        case '{': kind = TokenKind::lbrace; break;
        case '}': kind = TokenKind::rbrace; break;
        case '(': kind = TokenKind::lparen; break;
        case ')': kind = TokenKind::rparen; break;
        case ',': kind = TokenKind::comma; break;
        case '=': kind = TokenKind::equals; break;
        default:
          lex_illegal(span);
          continue;
      }
      out.push_back({kind, src_.substr(pos_, 1), 0.0, span});
      advance();
    }
    out.push_back({TokenKind::end_of_file, std::string_view(), 0.0, {line_, col_}});
    return out;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  char peek(std::size_t off = 0) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      if (is_space(src_[pos_])) {
        advance();
      } else if (peek() == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool starts_number() const {
    std::size_t off = peek() == '-' ? 1 : 0;
    const char c = peek(off);
    return is_digit(c) || (c == '.' && is_digit(peek(off + 1)));
  }

  Token lex_number(ast::Span span) {
    const std::size_t start = pos_;
    if (peek() == '-') advance();
    while (is_digit(peek())) advance();
    if (peek() == '.') {
      advance();
      while (is_digit(peek())) advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      advance();
      if (peek() == '+' || peek() == '-') advance();
      while (is_digit(peek())) advance();
    }
    const auto text = src_.substr(start, pos_ - start);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec == std::errc::result_out_of_range) {
      diags_.push_back({Severity::error, "number-overflow",
                        "numeric literal '" + std::string(text) + "' is out of range for a double",
                        {file_, span.line, span.column}});
      value = 0.0;
    } else if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      diags_.push_back({Severity::error, "illegal-character",
                        "malformed numeric literal '" + std::string(text) + "'",
                        {file_, span.line, span.column}});
      value = 0.0;
    }
    return {TokenKind::number, text, value, span};
  }

  void lex_illegal(ast::Span span) {
    const unsigned char first = static_cast<unsigned char>(src_[pos_]);
    std::size_t count = 0;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (is_space(c) || is_ident_start(c) || starts_number() || c == '{' || c == '}' || c == '(' ||
          c == ')' || c == ',' || c == '=' || (c == '/' && peek(1) == '/'))
        break;
      advance();
      ++count;
    }
    char desc[64];
    if (first >= 0x20 && first < 0x7f)
      std::snprintf(desc, sizeof desc, "illegal character '%c'", first);
    else
      std::snprintf(desc, sizeof desc, "illegal byte 0x%02x", first);
    std::string msg = desc;
    if (count > 1) msg += " (and " + std::to_string(count - 1) + " more)";
    diags_.push_back({Severity::error, "illegal-character", msg, {file_, span.line, span.column}});
  }

  std::string_view src_;
  const std::string& file_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::keyword: return "keyword";
    case TokenKind::number: return "number";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::comma: return "','";
    case TokenKind::equals: return "'='";
    case TokenKind::end_of_file: return "end of file";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view source, const std::string& file,
                            std::vector<Diagnostic>& diags) {
  return Lexer(source, file, diags).run();
}

}  // namespace robodsl
