#include "robodsl/bench.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace robodsl {

namespace {

constexpr std::size_t kStatePool = 1024;

volatile double g_sink = 0.0;

template <typename Call>
double min_cpu_seconds(const BenchOptions& opts, std::size_t dof, Call&& call) {
  std::vector<double> tau(dof);
  for (long long k = 0; k < opts.warmup; ++k) {
    call(static_cast<std::size_t>(k) % kStatePool, tau.data());
    if (dof) g_sink = tau[0];
  }
  double best = -1.0;
  for (int rep = 0; rep < std::max(1, opts.repeats); ++rep) {
    const std::clock_t start = std::clock();
    for (long long k = 0; k < opts.calls; ++k) {
      call(static_cast<std::size_t>(k) % kStatePool, tau.data());
      if (dof) g_sink = tau[0];
    }
    const double secs = static_cast<double>(std::clock() - start) / CLOCKS_PER_SEC;
    if (best < 0.0 || secs < best) best = secs;
  }
  return best;
}

VariantTiming timing(std::string name, double secs, long long calls) {
  return {std::move(name), secs, secs * 1e9 / static_cast<double>(calls)};
}

}  // namespace

const VariantTiming* BenchReport::find(const std::string& variant) const {
  for (const auto& v : variants)
    if (v.variant == variant) return &v;
  return nullptr;
}

std::vector<JointState> bench_states(const RobotModel& model, std::uint64_t seed) {
  return sample_states(model, kStatePool, seed);
}

BenchReport bench(const RobotModel& model, const GeneratedEntry* generated, const BenchOptions& opts) {
  if (opts.calls < kMinBenchCalls)
    throw std::invalid_argument("bench needs at least " + std::to_string(kMinBenchCalls) + " calls");
  if (generated && (generated->fingerprint != model.fingerprint() || !generated->fn))
    throw FingerprintMismatch("generated entry does not belong to model '" + model.name() + "'");

  const auto states = bench_states(model, opts.seed);
  const std::size_t dof = model.dof_count();
  const Vec3 gravity = Gravity{}.g;
  const double g[3] = {gravity[0], gravity[1], gravity[2]};

  BenchReport r;
  r.model_name = model.name();
  r.dof = static_cast<int>(dof);
  r.calls = opts.calls;
  r.cpu = cpu_description();
  r.seed = opts.seed;

  InverseDynamics engine(model);
  const double interp = min_cpu_seconds(opts, dof, [&](std::size_t i, double* tau) {
    const auto& s = states[i];
    engine.compute(s.q, s.qd, s.qdd, gravity, std::span<double>(tau, dof));
  });
  r.variants.push_back(timing("interpreter", interp, opts.calls));

  if (generated) {
    const RneaFn fn = generated->fn;
    const double gen = min_cpu_seconds(opts, dof, [&](std::size_t i, double* tau) {
      const auto& s = states[i];
      fn(s.q.data(), s.qd.data(), s.qdd.data(), g, tau);
    });
    r.variants.push_back(timing("generated", gen, opts.calls));
  }
  return r;
}

std::string cpu_description() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) != 0) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) break;
    auto value = line.substr(colon + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    return value;
  }
  return "unknown";
}

void print_bench_report(std::ostream& out, const BenchReport& r) {
  out << "model: " << r.model_name << "\n"
      << "dof: " << r.dof << "\n"
      << "calls: " << r.calls << "\n"
      << "seed: " << r.seed << "\n"
      << "cpu: " << r.cpu << "\n";
  for (const auto& v : r.variants)
    out << v.variant << ": cumulative_seconds=" << v.cumulative_seconds << " per_call_ns=" << v.per_call_ns << "\n";
  const auto* i = r.find("interpreter");
  const auto* g = r.find("generated");
  if (i && g && g->cumulative_seconds > 0.0) out << "speedup: " << i->cumulative_seconds / g->cumulative_seconds << "\n";
}

void write_bench_records(std::ostream& out, const std::vector<BenchReport>& reports) {
  out << "name\tdof\tvariant\tcalls\tcumulative_seconds\tper_call_ns\tseed\n";
  for (const auto& r : reports)
    for (const auto& v : r.variants)
      out << r.model_name << '\t' << r.dof << '\t' << v.variant << '\t' << r.calls << '\t' << v.cumulative_seconds
          << '\t' << v.per_call_ns << '\t' << r.seed << '\n';
}

void write_bench_table(std::ostream& out, const std::vector<BenchReport>& reports) {
  out << "dof\tvariant\tcumulative_seconds\n";
  for (const auto& r : reports)
    for (const auto& v : r.variants) out << r.dof << '\t' << v.variant << '\t' << v.cumulative_seconds << '\n';
}

}  // namespace robodsl
