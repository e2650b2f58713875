// Build-time generator: robodsl-gen <file> <self|c99> <outdir> <prefix> [--no-precompute]
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "robodsl/codegen.hpp"
#include "robodsl/frontend.hpp"

namespace fs = std::filesystem;

namespace {

bool write_if_changed(const fs::path& path, const std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (in) {
    std::string old((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (old == text) return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 5 || argc > 6) {
    std::cerr << "usage: robodsl-gen <file> <self|c99> <outdir> <prefix> [--no-precompute]\n";
    return 2;
  }
  robodsl::GenOptions opts;
  const std::string target = argv[2];
  if (target == "c99")
    opts.target = robodsl::Target::c99;
  else if (target != "self") {
    std::cerr << "robodsl-gen: unknown target '" << target << "'\n";
    return 2;
  }
  opts.namespace_prefix = argv[4];
  if (argc == 6) {
    if (std::string(argv[5]) != "--no-precompute") {
      std::cerr << "robodsl-gen: unknown flag '" << argv[5] << "'\n";
      return 2;
    }
    opts.precompute_constants = false;
  }

  try {
    auto result = robodsl::load_model_file(argv[1]);
    robodsl::print_diagnostics(std::cerr, result.diagnostics);
    if (!result.model) return 1;
    const auto prog = robodsl::generate(*result.model, opts);
    const fs::path dir = argv[3];
    fs::create_directories(dir);
    if (!write_if_changed(dir / prog.header_filename, prog.header_text) ||
        !write_if_changed(dir / prog.source_filename, prog.source_text)) {
      std::cerr << "robodsl-gen: cannot write into '" << dir.string() << "'\n";
      return 2;
    }
  } catch (const robodsl::GenerationError& e) {
    std::cerr << robodsl::format_diagnostic(e.diagnostic()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "robodsl-gen: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
