#pragma once

#include <filesystem>
#include <vector>

#include "robodsl/model.hpp"

namespace robodsl {

/// Directory holding the bundled `.robot` documents.
std::filesystem::path default_corpus_dir();

/// Bundled documents in ascending DoF order.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir = default_corpus_dir());

/// Loads every bundled document. Throws std::runtime_error if one is missing
/// or invalid.
std::vector<RobotModel> corpus(const std::filesystem::path& dir = default_corpus_dir());

}  // namespace robodsl
