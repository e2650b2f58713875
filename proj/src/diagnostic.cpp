#include "robodsl/diagnostic.hpp"

#include <algorithm>
#include <ostream>

namespace robodsl {

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

void sort_by_location(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    const bool a_known = a.location.line > 0;
    const bool b_known = b.location.line > 0;
    if (a_known != b_known) return a_known;
    if (a.location.line != b.location.line) return a.location.line < b.location.line;
    return a.location.column < b.location.column;
  });
}

std::string format_diagnostic(const Diagnostic& d, bool color) {
  std::string out = d.location.file.empty() ? std::string("<input>") : d.location.file;
  if (d.location.line > 0)
    out += ':' + std::to_string(d.location.line) + ':' + std::to_string(d.location.column);
  out += ": ";
  const char* word = d.severity == Severity::error ? "error" : "warning";
  if (color) {
    out += d.severity == Severity::error ? "\x1b[1;31m" : "\x1b[1;33m";
    out += word;
    out += "\x1b[0m";
  } else {
    out += word;
  }
  out += '[' + d.code + "]: " + d.message;
  return out;
}

void print_diagnostics(std::ostream& os, const std::vector<Diagnostic>& diags, bool color) {
  for (const auto& d : diags) os << format_diagnostic(d, color) << '\n';
}

}  // namespace robodsl
