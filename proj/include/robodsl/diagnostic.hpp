#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace robodsl {

struct SourceLocation {
  std::string file;
  int line = 0;    // 1-based, 0 when unknown
  int column = 0;  // 1-based byte column
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  SourceLocation location;
};

bool has_errors(const std::vector<Diagnostic>& diags);

/// Stable sort by (line, column); diagnostics without a location keep their
/// relative order and go last.
void sort_by_location(std::vector<Diagnostic>& diags);

/// Renders `file:line:col: severity[code]: message`.
std::string format_diagnostic(const Diagnostic& d, bool color = false);
void print_diagnostics(std::ostream& os, const std::vector<Diagnostic>& diags, bool color = false);

}  // namespace robodsl
