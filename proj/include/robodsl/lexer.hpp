#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "robodsl/ast.hpp"
#include "robodsl/diagnostic.hpp"

namespace robodsl {

enum class TokenKind {
  identifier,
  keyword,
  number,
  lbrace,
  rbrace,
  lparen,
  rparen,
  comma,
  equals,
  end_of_file,
};

struct Token {
  TokenKind kind = TokenKind::end_of_file;
  std::string_view text;
  double number = 0.0;
  ast::Span span;
};

const char* token_kind_name(TokenKind kind);
bool is_keyword(std::string_view word);

/// Splits `source` into tokens. Illegal bytes and out-of-range literals are
/// reported in `diags` and skipped; the returned stream always ends with EOF.
std::vector<Token> tokenize(std::string_view source, const std::string& file,
                            std::vector<Diagnostic>& diags);

}  // namespace robodsl
