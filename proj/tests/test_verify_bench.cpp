#include <doctest.h>

#include <numbers>
#include <sstream>

#include "robodsl/bench.hpp"
#include "robodsl/registry.hpp"
#include "robodsl/verify.hpp"
#include "support.hpp"

using namespace robodsl;

namespace {

// Corrupted kernel: the compiled pendulum with one sign flipped.
RneaFn g_wrapped = nullptr;
void corrupted(const double* q, const double* qd, const double* qdd, const double* g, double* tau) {
  g_wrapped(q, qd, qdd, g, tau);
  tau[0] = -tau[0];
}

}  // namespace

TEST_CASE("every compiled corpus kernel agrees with the interpreter") {
  CHECK(generated_entries().size() == 12);
  for (const auto& m : corpus()) {
    if (m.base().mobility == BaseMobility::floating) {
      CHECK(find_generated(m.name()) == nullptr);
      continue;
    }
    for (const char* variant : {"self", "self-noprecompute", "c99"}) {
      CAPTURE(m.name());
      CAPTURE(variant);
      const auto* e = find_generated(m.name(), variant);
      REQUIRE(e);
      const auto r = verify(m, *e, 1000, 42);
      CHECK(r.pass);
      CHECK(r.max_rel_error <= 1e-12);
      CHECK(r.samples == 1000);
      CHECK(r.variant == variant);
    }
  }
}

TEST_CASE("generated kernels reproduce the analytic pendulum") {
  const auto* e = find_generated("Pendulum", "c99");
  REQUIRE(e);
  const double q = 0.37, qd = 0.0, one = 1.0, zero = 0.0;
  const double g_axis[3] = {0, 0, -9.81}, g_side[3] = {0, -9.81, 0};
  double tau = 0.0;
  e->fn(&q, &qd, &one, g_axis, &tau);
  CHECK(std::abs(tau - 1.0 / 3.0) < 1e-12);
  e->fn(&zero, &zero, &zero, g_side, &tau);
  CHECK(std::abs(tau - 4.905) < 1e-12);
}

TEST_CASE("verify guards") {
  const auto pendulum = testing::load(testing::model_file("pendulum"));
  const auto mixed = testing::load(testing::model_file("mixed5"));
  const auto* e = find_generated("Pendulum");
  REQUIRE(e);
  CHECK_THROWS_AS(verify(pendulum, *e, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify(mixed, *e, 10, 1), FingerprintMismatch);
  CHECK_THROWS_AS(compare_state(mixed, *e, JointState::zero(5)), FingerprintMismatch);
}

TEST_CASE("a corrupted kernel fails and the failure replays exactly") {
  const auto m = testing::load(testing::model_file("pendulum"));
  const auto* real = find_generated("Pendulum");
  REQUIRE(real);
  g_wrapped = real->fn;
  GeneratedEntry bad = *real;
  bad.fn = &corrupted;

  const auto r = verify(m, bad, 200, 7);
  CHECK_FALSE(r.pass);
  REQUIRE(r.worst_state.q.size() == 1);
  CHECK(r.max_rel_error > 1e-12);

  const auto replay = compare_state(m, bad, r.worst_state);
  CHECK(replay.max_rel_error == r.max_rel_error);
  CHECK(replay.generated[0] == -replay.reference[0]);
  const auto again = verify(m, bad, 200, 7);
  CHECK(again.max_rel_error == r.max_rel_error);
  CHECK(again.worst_sample == r.worst_sample);

  VerifyOptions fault;
  fault.inject_fault = true;
  CHECK_FALSE(verify(m, *real, 50, 7, fault).pass);

  std::ostringstream text;
  print_verify_report(text, r);
  CHECK(text.str().find("worst_q:") != std::string::npos);
  CHECK(text.str().find("result: FAIL") != std::string::npos);
}

TEST_CASE("sampled states are deterministic and in range") {
  const auto m = testing::load(testing::model_file("slider_leg4"));
  const auto a = sample_states(m, 500, 9);
  const auto b = sample_states(m, 500, 9);
  const auto c = sample_states(m, 500, 10);
  CHECK(a.front().q == b.front().q);
  CHECK(a.back().qdd == b.back().qdd);
  CHECK(a.front().q != c.front().q);
  for (const auto& s : a) {
    CHECK(std::abs(s.q[0]) <= 1.0);  // prismatic slider
    for (int i = 1; i < 4; ++i) CHECK(std::abs(s.q[i]) <= std::numbers::pi);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(s.qd[i]) <= 10.0);
      CHECK(std::abs(s.qdd[i]) <= 10.0);
    }
  }
  CHECK(bench_states(m, 3)[17].qd == bench_states(m, 3)[17].qd);
}

TEST_CASE("bench") {
  const auto m = testing::load(testing::model_file("pendulum"));
  const auto* e = find_generated("Pendulum");
  REQUIRE(e);
  BenchOptions small;
  small.calls = 9999;
  CHECK_THROWS_AS(bench(m, e, small), std::invalid_argument);

  BenchOptions opts;
  opts.calls = 100000;
  opts.seed = 5;
  const auto r = bench(m, e, opts);
  CHECK(r.model_name == "Pendulum");
  CHECK(r.dof == 1);
  CHECK(r.calls == 100000);
  CHECK(r.seed == 5);
  CHECK_FALSE(r.cpu.empty());
  const auto* interp = r.find("interpreter");
  const auto* gen = r.find("generated");
  REQUIRE(interp);
  REQUIRE(gen);
  CHECK(gen->cumulative_seconds <= interp->cumulative_seconds);
  CHECK(interp->per_call_ns == doctest::Approx(interp->cumulative_seconds * 1e9 / 100000).epsilon(1e-12));

  const auto only = bench(m, nullptr, opts);
  CHECK(only.variants.size() == 1);

  std::ostringstream rec, table, text;
  write_bench_records(rec, {r});
  write_bench_table(table, {r});
  print_bench_report(text, r);
  std::istringstream lines(rec.str());
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "name\tdof\tvariant\tcalls\tcumulative_seconds\tper_call_ns\tseed");
  std::getline(lines, row);
  CHECK(row.rfind("Pendulum\t1\tinterpreter\t100000\t", 0) == 0);
  CHECK(table.str().rfind("dof\tvariant\tcumulative_seconds\n1\tinterpreter\t", 0) == 0);
  CHECK(text.str().find("speedup: ") != std::string::npos);
}
