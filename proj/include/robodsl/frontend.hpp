#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "robodsl/ast.hpp"
#include "robodsl/model.hpp"

namespace robodsl {

/// Resolves names, assembles the tree and validates it. Diagnostics carry
/// the source locations of the offending declarations.
ModelResult build_model(const AstDocument& doc, const std::string& file = "<input>");

/// parse + build_model.
ModelResult load_model(std::string_view source, const std::string& file = "<input>");

/// Reads `path` and runs load_model. Throws std::runtime_error when the file
/// cannot be read.
ModelResult load_model_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace robodsl
