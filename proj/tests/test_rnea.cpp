#include <doctest.h>

#include <Eigen/Cholesky>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <new>
#include <numbers>

#include "robodsl/rnea.hpp"
#include "robodsl/verify.hpp"
#include "support.hpp"

using namespace robodsl;

namespace {
std::atomic<long> g_allocations{0};
}

void* operator new(std::size_t n) {
  ++g_allocations;
  if (void* p = std::malloc(n ? n : 1)) return p;
  throw std::bad_alloc();
}
void operator delete(void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }

namespace {

std::vector<RobotModel> fixed_corpus() {
  std::vector<RobotModel> out;
  for (auto& m : corpus())
    if (m.base().mobility == BaseMobility::fixed) out.push_back(std::move(m));
  return out;
}

Eigen::VectorXd as_vec(const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("no forcing gives zero torque") {
  for (const auto& m : fixed_corpus()) {
    const auto tau = rnea(m, JointState::zero(m.dof_count()), Gravity::none());
    for (double t : tau) CHECK(std::abs(t) < 1e-12);
    testing::Rng rng(31);
    JointState s = JointState::zero(m.dof_count());
    for (auto& q : s.q) q = rng.uniform(-3, 3);
    for (double t : rnea(m, s, Gravity::none())) CHECK(std::abs(t) < 1e-12);
  }
}

TEST_CASE("pendulum matches the rigid-pendulum equations") {
  const auto m = testing::load(testing::model_file("pendulum"));
  // g along the joint axis: tau = I qdd with I = m L^2 / 3.
  for (double q : {0.0, 0.7, -2.0, 3.1}) {
    JointState s{{q}, {0.0}, {1.0}};
    CHECK(std::abs(rnea(m, s)[0] - 1.0 / 3.0) < 1e-12);
  }
  // Static moment of the weight about the hinge.
  const Gravity side{Vec3(0, -9.81, 0)};
  CHECK(std::abs(rnea(m, JointState{{0.0}, {0.0}, {0.0}}, side)[0] - 4.905) < 1e-12);
  for (double q : {0.4, 1.2, -2.5}) {
    JointState s{{q}, {0.3}, {-0.8}};
    CHECK(std::abs(rnea(m, s, side)[0] - (-0.8 / 3.0 + 4.905 * std::cos(q))) < 1e-12);
  }
  const std::vector<double> q1{0.9};
  const auto mm = mass_matrix_via_rnea(m, q1);
  REQUIRE(mm.rows() == 1);
  CHECK(std::abs(mm(0, 0) - 1.0 / 3.0) < 1e-15);
  const std::vector<double> qd{2.0};
  CHECK(std::abs(bias_forces(m, q1, qd, Gravity::none())[0]) < 1e-15);
}

TEST_CASE("dynamics properties on the corpus") {
  testing::Rng rng(32);
  for (const auto& m : fixed_corpus()) {
    CAPTURE(m.name());
    const auto n = static_cast<Eigen::Index>(m.dof_count());
    const auto states = sample_states(m, 100, 33);
    for (const auto& s : states) {
      const Eigen::MatrixXd mm = mass_matrix_via_rnea(m, s.q);
      CHECK((mm - mm.transpose()).cwiseAbs().rowwise().sum().maxCoeff() < 1e-9);
      CHECK(Eigen::LLT<Eigen::MatrixXd>(mm).info() == Eigen::Success);

      const Gravity g;
      const auto bias = bias_forces(m, s.q, s.qd, g);
      CHECK(inf_norm(as_vec(rnea(m, s, g)) - (mm * as_vec(s.qdd) + as_vec(bias))) < 1e-9);

      // Linearity in qdd.
      JointState s1 = s, s2 = s, mix = s, zero = s;
      const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
      for (Eigen::Index i = 0; i < n; ++i) {
        s2.qdd[i] = rng.uniform(-10, 10);
        mix.qdd[i] = a * s1.qdd[i] + b * s2.qdd[i];
        zero.qdd[i] = 0.0;
      }
      const auto t0 = as_vec(rnea(m, zero, g));
      const Eigen::VectorXd lhs = as_vec(rnea(m, mix, g)) - t0;
      const Eigen::VectorXd rhs = a * (as_vec(rnea(m, s1, g)) - t0) + b * (as_vec(rnea(m, s2, g)) - t0);
      CHECK(inf_norm(lhs - rhs) < 1e-9);

      // Gravity superposition.
      const Gravity g1{testing::Rng(rng.gen()).vec3(10)}, g2{testing::Rng(rng.gen()).vec3(10)};
      const auto none = as_vec(rnea(m, s, Gravity::none()));
      const Eigen::VectorXd both = as_vec(rnea(m, s, Gravity{g1.g + g2.g})) - none;
      const Eigen::VectorXd sep = (as_vec(rnea(m, s, g1)) - none) + (as_vec(rnea(m, s, g2)) - none);
      CHECK(inf_norm(both - sep) < 1e-9);
    }
  }
}

TEST_CASE("sibling branch accelerations do not reach the other branch") {
  const auto m = testing::load(testing::model_file("branched7"));
  const auto states = sample_states(m, 50, 34);
  testing::Rng rng(35);
  for (auto s : states) {
    std::fill(s.qd.begin(), s.qd.end(), 0.0);
    const auto before = rnea(m, s);
    s.qdd[5] = rng.uniform(-10, 10);
    s.qdd[6] = rng.uniform(-10, 10);
    const auto after = rnea(m, s);
    for (int i : {2, 3, 4}) CHECK(std::abs(after[i] - before[i]) < 1e-12);
  }
}

TEST_CASE("a virtual link contributes nothing") {
  const auto chain = testing::load(testing::fixture("chain.robot"));
  const auto with_virtual = testing::load(testing::fixture("chain_virtual.robot"));
  REQUIRE(chain.dof_count() == 3);
  REQUIRE(with_virtual.dof_count() == 4);
  REQUIRE(with_virtual.joints()[1].name == "jv");
  auto widen = [](const std::vector<double>& v) { return std::vector<double>{v[0], 0.0, v[1], v[2]}; };
  for (const auto& s : sample_states(chain, 100, 36)) {
    const JointState w{widen(s.q), widen(s.qd), widen(s.qdd)};
    const auto a = rnea(chain, s);
    const auto b = rnea(with_virtual, w);
    CHECK(std::abs(a[0] - b[0]) < 1e-12);
    CHECK(std::abs(a[1] - b[2]) < 1e-12);
    CHECK(std::abs(a[2] - b[3]) < 1e-12);

    const auto ma = mass_matrix_via_rnea(chain, s.q);
    const auto mb = mass_matrix_via_rnea(with_virtual, w.q);
    const int map[3] = {0, 2, 3};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(std::abs(ma(r, c) - mb(map[r], map[c])) < 1e-12);
  }
}

TEST_CASE("contract errors") {
  const auto hyq = testing::load(testing::model_file("hyq"));
  CHECK_THROWS_AS(InverseDynamics{hyq}, UnsupportedModel);
  CHECK_THROWS_AS(rnea(hyq, JointState::zero(12)), UnsupportedModel);
  const auto m = testing::load(testing::model_file("mixed5"));
  CHECK_THROWS_AS(rnea(m, JointState::zero(4)), std::invalid_argument);
}

TEST_CASE("compute does not allocate") {
  const auto m = testing::load(testing::model_file("branched7"));
  const auto states = sample_states(m, 16, 37);
  InverseDynamics engine(m);
  std::vector<double> tau(m.dof_count());
  const Vec3 g = Gravity{}.g;
  engine.compute(states[0].q, states[0].qd, states[0].qdd, g, tau);
  const long before = g_allocations.load();
  for (const auto& s : states) engine.compute(s.q, s.qd, s.qdd, g, tau);
  CHECK(g_allocations.load() == before);
}
