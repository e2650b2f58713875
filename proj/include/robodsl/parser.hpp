#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "robodsl/ast.hpp"
#include "robodsl/diagnostic.hpp"

namespace robodsl {

struct ParseResult {
  /// Present only when no error diagnostics were produced.
  std::optional<AstDocument> document;
  std::vector<Diagnostic> diagnostics;
};

/// Parses one `.robot` document. After a syntax error the parser skips to the
/// next top-level declaration keyword and continues, so a single run can
/// report several independent errors.
ParseResult parse(std::string_view source, const std::string& file = "<input>");

/// Canonical text for `doc`. Numbers use the shortest representation that
/// reads back to the identical double.
std::string pretty_print(const AstDocument& doc);

std::string format_number(double value);

}  // namespace robodsl
