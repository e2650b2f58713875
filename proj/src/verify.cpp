#include "robodsl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

namespace robodsl {

namespace {

void check_entry(const RobotModel& model, const GeneratedEntry& entry) {
  if (entry.fingerprint != model.fingerprint() || entry.dof != static_cast<int>(model.dof_count()))
    throw FingerprintMismatch("generated entry '" + entry.model_name + "' (" + format_fingerprint(entry.fingerprint) +
                              ") was not generated from model '" + model.name() + "' (" +
                              format_fingerprint(model.fingerprint()) + ")");
  if (!entry.fn) throw std::invalid_argument("generated entry has no function");
}

struct Evaluator {
  Evaluator(const RobotModel& model, const GeneratedEntry& entry, const VerifyOptions& opts)
      : engine(model), entry(entry), opts(opts), ref(model.dof_count()), gen(model.dof_count()) {}

  // Returns (max_rel, max_abs, argmax component).
  void run(const JointState& s, double& rel, double& abs, std::size_t& component) {
    engine.compute(s.q, s.qd, s.qdd, opts.gravity.g, ref);
    const double g[3] = {opts.gravity.g[0], opts.gravity.g[1], opts.gravity.g[2]};
    entry.fn(s.q.data(), s.qd.data(), s.qdd.data(), g, gen.data());
    if (opts.inject_fault && !gen.empty()) gen[0] = -gen[0];
    rel = abs = 0.0;
    component = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double d = std::abs(gen[i] - ref[i]);
      const double r = d / std::max(1.0, std::abs(ref[i]));
      // NaN must not pass silently.
      if (r > rel || std::isnan(r)) {
        rel = std::isnan(r) ? INFINITY : r;
        component = i;
      }
      abs = std::max(abs, std::isnan(d) ? INFINITY : d);
    }
  }

  InverseDynamics engine;
  const GeneratedEntry& entry;
  const VerifyOptions& opts;
  std::vector<double> ref, gen;
};

}  // namespace

std::vector<JointState> sample_states(const RobotModel& model, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::size_t n = model.dof_count();
  std::vector<JointState> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    JointState s = JointState::zero(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& joint = model.joints()[model.dof_order()[i]];
      const double range = joint.kind == JointKind::revolute ? std::numbers::pi : 1.0;
      s.q[i] = range * unit(rng);
      s.qd[i] = 10.0 * unit(rng);
      s.qdd[i] = 10.0 * unit(rng);
    }
    out.push_back(std::move(s));
  }
  return out;
}

VerifyReport verify(const RobotModel& model, const GeneratedEntry& entry, std::size_t samples, std::uint64_t seed,
                    const VerifyOptions& opts) {
  if (samples == 0) throw std::invalid_argument("verify needs at least one sample");
  check_entry(model, entry);

  VerifyReport report;
  report.model_name = model.name();
  report.variant = entry.variant;
  report.samples = samples;
  report.seed = seed;

  Evaluator eval(model, entry, opts);
  const auto states = sample_states(model, samples, seed);
  bool have_worst = false;
  for (std::size_t k = 0; k < states.size(); ++k) {
    double rel = 0.0, abs = 0.0;
    std::size_t component = 0;
    eval.run(states[k], rel, abs, component);
    report.max_abs_error = std::max(report.max_abs_error, abs);
    if (!have_worst || rel > report.max_rel_error) {
      have_worst = true;
      report.max_rel_error = rel;
      report.worst_state = states[k];
      report.worst_sample = k;
      report.worst_component = component;
    }
  }
  report.pass = report.max_rel_error <= report.tolerance;
  return report;
}

StateComparison compare_state(const RobotModel& model, const GeneratedEntry& entry, const JointState& state,
                              const VerifyOptions& opts) {
  check_entry(model, entry);
  const std::size_t n = model.dof_count();
  if (state.q.size() != n || state.qd.size() != n || state.qdd.size() != n)
    throw std::invalid_argument("joint state length does not match the model DoF count");
  Evaluator eval(model, entry, opts);
  StateComparison out;
  std::size_t component = 0;
  eval.run(state, out.max_rel_error, out.max_abs_error, component);
  out.reference = eval.ref;
  out.generated = eval.gen;
  return out;
}

void print_verify_report(std::ostream& out, const VerifyReport& r) {
  const auto old = out.precision(17);
  out << "model: " << r.model_name << "\n"
      << "variant: " << r.variant << "\n"
      << "samples: " << r.samples << "\n"
      << "seed: " << r.seed << "\n"
      << "max_rel_error: " << r.max_rel_error << "\n"
      << "max_abs_error: " << r.max_abs_error << "\n"
      << "tolerance: " << r.tolerance << "\n";
  if (!r.pass) {
    out << "worst_sample: " << r.worst_sample << "\n"
        << "worst_component: " << r.worst_component << "\n";
    auto row = [&](const char* label, const std::vector<double>& v) {
      out << label << ":";
      for (double x : v) out << " " << x;
      out << "\n";
    };
    row("worst_q", r.worst_state.q);
    row("worst_qd", r.worst_state.qd);
    row("worst_qdd", r.worst_state.qdd);
  }
  out << "result: " << (r.pass ? "pass" : "FAIL") << "\n";
  out.precision(old);
}

}  // namespace robodsl
