#include "robodsl/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "robodsl/bench.hpp"
#include "robodsl/frontend.hpp"
#include "robodsl/registry.hpp"
#include "robodsl/rnea.hpp"
#include "robodsl/verify.hpp"

namespace robodsl::cli {

namespace fs = std::filesystem;

namespace {

// Loads and validates; prints diagnostics. Returns the exit status on failure.
std::optional<RobotModel> load(const fs::path& file, const Streams& io, int& status) {
  ModelResult result;
  try {
    result = load_model_file(file);
  } catch (const std::exception& e) {
    io.err << "robodsl: " << e.what() << "\n";
    status = usage;
    return std::nullopt;
  }
  print_diagnostics(io.err, result.diagnostics, io.color);
  if (!result.model) status = diagnostics;
  return std::move(result.model);
}

void report_error(const Streams& io, const fs::path& file, const std::string& code, const std::string& message) {
  print_diagnostics(io.err, {Diagnostic{Severity::error, code, message, {file.string(), 0, 0}}}, io.color);
}

}  // namespace

int cmd_check(const fs::path& file, const Streams& io) {
  int status = ok;
  auto model = load(file, io, status);
  if (!model) return status;
  io.out << "name: " << model->name() << "\n"
         << "links: " << model->links().size() + 1 << "\n"
         << "joints: " << model->joints().size() << "\n"
         << "dof: " << model->dof_count() << "\n"
         << "base: " << (model->base().mobility == BaseMobility::floating ? "floating" : "fixed") << "\n"
         << "fingerprint: " << format_fingerprint(model->fingerprint()) << "\n";
  return ok;
}

int cmd_generate(const GenerateArgs& args, const Streams& io) {
  int status = ok;
  auto model = load(args.file, io, status);
  if (!model) return status;

  GenOptions opts;
  opts.target = args.target;
  opts.precompute_constants = !args.no_precompute;
  opts.emit_comments = !args.no_comments;
  opts.namespace_prefix = args.prefix;
  GeneratedProgram prog;
  try {
    prog = generate(*model, opts);
  } catch (const GenerationError& e) {
    Diagnostic d = e.diagnostic();
    d.location.file = args.file.string();
    print_diagnostics(io.err, {d}, io.color);
    return diagnostics;
  }

  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  for (const auto& [name, text] : {std::pair{prog.header_filename, prog.header_text},
                                   std::pair{prog.source_filename, prog.source_text}}) {
    const fs::path path = args.out_dir / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
      io.err << "robodsl: cannot write '" << path.string() << "'\n";
      return usage;
    }
    io.out << "wrote: " << path.string() << "\n";
  }
  io.out << "entry: " << prog.entry_symbol << "\n"
         << "flops: " << prog.flops.total() << " (forward " << prog.flops.forward.mul << " mul " << prog.flops.forward.add
         << " add, backward " << prog.flops.backward.mul << " mul " << prog.flops.backward.add << " add)\n";
  return ok;
}

int cmd_verify(const VerifyArgs& args, const Streams& io) {
  if (args.samples <= 0) {
    io.err << "robodsl: --samples must be at least 1\n";
    return usage;
  }
  int status = ok;
  auto model = load(args.file, io, status);
  if (!model) return status;
  if (model->base().mobility == BaseMobility::floating) {
    report_error(io, args.file, "unsupported-floating-base",
                 "model '" + model->name() + "' has a floating base; only fixed-base models can be verified");
    return diagnostics;
  }
  const GeneratedEntry* entry = find_generated(model->name(), args.variant);
  if (!entry) {
    io.err << "robodsl: no compiled " << args.variant << " kernel for model '" << model->name()
           << "' in this executable\n";
    return usage;
  }
  VerifyOptions opts;
  opts.inject_fault = args.inject_fault;
  try {
    const auto report = verify(*model, *entry, static_cast<std::size_t>(args.samples), args.seed, opts);
    print_verify_report(io.out, report);
    return report.pass ? ok : verification_failed;
  } catch (const FingerprintMismatch& e) {
    io.err << "robodsl: fingerprint mismatch: " << e.what() << "\n";
    return usage;
  }
}

int cmd_bench(const BenchArgs& args, const Streams& io) {
  if (args.calls < kMinBenchCalls) {
    io.err << "robodsl: --calls must be at least " << kMinBenchCalls << "\n";
    return usage;
  }
  BenchOptions opts;
  opts.calls = args.calls;
  opts.seed = args.seed;
  opts.repeats = args.repeats;

  std::vector<BenchReport> reports;
  for (const auto& file : args.files) {
    int status = ok;
    auto model = load(file, io, status);
    if (!model) return status;
    if (model->base().mobility == BaseMobility::floating) {
      report_error(io, file, "unsupported-floating-base",
                   "model '" + model->name() + "' has a floating base; only fixed-base models can be benchmarked");
      return diagnostics;
    }
    const GeneratedEntry* entry = find_generated(model->name(), "self");
    if (!entry) {
      io.err << "robodsl: no compiled kernel for model '" << model->name() << "' in this executable\n";
      return usage;
    }
    try {
      reports.push_back(bench(*model, entry, opts));
    } catch (const FingerprintMismatch& e) {
      io.err << "robodsl: fingerprint mismatch: " << e.what() << "\n";
      return usage;
    }
    if (reports.size() > 1) io.out << "\n";
    print_bench_report(io.out, reports.back());
  }

  auto write = [&](const fs::path& path, auto&& writer) {
    if (path.empty()) return true;
    std::ofstream out(path);
    writer(out, reports);
    out.close();
    if (!out) io.err << "robodsl: cannot write '" << path.string() << "'\n";
    return static_cast<bool>(out);
  };
  if (!write(args.record, write_bench_records)) return usage;
  if (!write(args.table, write_bench_table)) return usage;
  return ok;
}

int run(int argc, const char* const* argv, const Streams& io) {
  CLI::App app{"Rigid-body model DSL: check, generate, verify, bench", "robodsl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolchainVersion);

  fs::path check_file;
  auto* check = app.add_subcommand("check", "parse and validate a model, print a summary");
  check->add_option("file", check_file, "model document")->required();

  GenerateArgs gen;
  std::string target = "self";
  auto* generate_cmd = app.add_subcommand("generate", "emit specialized inverse dynamics");
  generate_cmd->add_option("file", gen.file, "model document")->required();
  generate_cmd->add_option("--target", target, "self or c99")->check(CLI::IsMember({"self", "c99"}));
  generate_cmd->add_option("--out", gen.out_dir, "output directory")->required();
  generate_cmd->add_flag("--no-precompute", gen.no_precompute, "keep model constants as named values");
  generate_cmd->add_flag("--no-comments", gen.no_comments, "omit statement group comments");
  generate_cmd->add_option("--prefix", gen.prefix, "namespace or symbol prefix (default: robot name)");

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "compare the compiled kernel with the interpreter");
  verify_cmd->add_option("file", ver.file, "model document")->required();
  verify_cmd->add_option("--samples", ver.samples, "random states")->capture_default_str();
  verify_cmd->add_option("--seed", ver.seed, "random seed")->capture_default_str();
  verify_cmd->add_option("--variant", ver.variant, "compiled variant")
      ->check(CLI::IsMember({"self", "self-noprecompute", "c99"}))
      ->capture_default_str();
  verify_cmd->add_flag("--inject-fault", ver.inject_fault, "flip the sign of tau[0] (harness self-test)");

  BenchArgs ben;
  auto* bench_cmd = app.add_subcommand("bench", "time interpreter and compiled kernel");
  bench_cmd->add_option("files", ben.files, "model documents")->required();
  bench_cmd->add_option("--calls", ben.calls, "calls per timed loop")->capture_default_str();
  bench_cmd->add_option("--seed", ben.seed, "random seed")->capture_default_str();
  bench_cmd->add_option("--repeats", ben.repeats, "timed loops; the minimum is reported")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--record", ben.record, "machine-readable record file");
  bench_cmd->add_option("--table", ben.table, "dof/variant/time table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? ok : usage;
  }

  const Streams streams = io;
  if (check->parsed()) return cmd_check(check_file, streams);
  if (generate_cmd->parsed()) {
    gen.target = target == "c99" ? Target::c99 : Target::self_language;
    return cmd_generate(gen, streams);
  }
  if (verify_cmd->parsed()) return cmd_verify(ver, streams);
  return cmd_bench(ben, streams);
}

}  // namespace robodsl::cli
