#include "robodsl/corpus.hpp"

#include <stdexcept>

#include "robodsl/frontend.hpp"

#ifndef ROBODSL_CORPUS_DIR
#define ROBODSL_CORPUS_DIR "models"
#endif

namespace robodsl {

std::filesystem::path default_corpus_dir() { return ROBODSL_CORPUS_DIR; }

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const char* name : {"pendulum.robot", "slider_leg4.robot", "mixed5.robot", "branched7.robot", "hyq.robot"})
    out.push_back(dir / name);
  return out;
}

std::vector<RobotModel> corpus(const std::filesystem::path& dir) {
  std::vector<RobotModel> out;
  for (const auto& path : corpus_files(dir)) {
    auto result = load_model_file(path);
    if (!result.model) {
      std::string msg = "corpus document '" + path.string() + "' is invalid";
      if (!result.diagnostics.empty()) msg += ": " + format_diagnostic(result.diagnostics.front(), false);
      throw std::runtime_error(msg);
    }
    out.push_back(std::move(*result.model));
  }
  return out;
}

}  // namespace robodsl
