#include <doctest.h>

#include <numbers>

#include "doc_builder.hpp"
#include "robodsl/codegen.hpp"
#include "scan.hpp"
#include "support.hpp"

using namespace robodsl;

using testing::count_of;
using testing::identifiers;
using testing::strip_comments;

namespace {

GenOptions options(Target t, bool precompute, const std::string& prefix = "") {
  GenOptions o;
  o.target = t;
  o.precompute_constants = precompute;
  o.namespace_prefix = prefix;
  return o;
}

}  // namespace

TEST_CASE("generation is deterministic") {
  for (const char* name : {"pendulum", "slider_leg4", "branched7"})
    for (auto t : {Target::self_language, Target::c99})
      for (bool pre : {true, false}) {
        const auto m1 = testing::load(testing::model_file(name));
        const auto m2 = testing::load(testing::model_file(name));
        const auto a = generate(m1, options(t, pre));
        const auto b = generate(m2, options(t, pre));
        CHECK(a.source_text == b.source_text);
        CHECK(a.header_text == b.header_text);
        CHECK(a.flops.total() == b.flops.total());
      }
}

TEST_CASE("header comment") {
  const auto m = testing::load(testing::model_file("slider_leg4"));
  const auto p = generate(m, options(Target::c99, false, "leg"));
  const std::string expected = std::string("// Generated by robodsl 1.0.0. Do not edit.\n") +
                               "// model: SliderLeg\n// fingerprint: " + format_fingerprint(m.fingerprint()) +
                               "\n// options: target=c99 precompute_constants=off emit_comments=on namespace_prefix=leg\n"
                               "// dof_order: slider HAA HFE KFE\n";
  CHECK(p.source_text.rfind(expected, 0) == 0);
  CHECK(p.header_text.rfind(expected, 0) == 0);
  CHECK(p.source_filename == "leg_rnea.c");
  CHECK(p.header_filename == "leg_rnea.h");
  CHECK(p.entry_symbol == "leg_rnea");
  CHECK(p.header_text.find("void leg_rnea(const double* q, const double* qd, const double* qdd, const double* g, "
                           "double* tau);") != std::string::npos);
  CHECK(p.header_text.find("#define LEG_DOF 4") != std::string::npos);
  CHECK(p.header_text.find("extern \"C\"") != std::string::npos);
  CHECK(p.model_fingerprint == m.fingerprint());

  const auto s = generate(m, options(Target::self_language, true));
  CHECK(s.entry_symbol == "sliderleg::rnea");
  CHECK(s.header_filename == "sliderleg_rnea.hpp");
  CHECK(s.options_used.namespace_prefix == "sliderleg");
}

TEST_CASE("7-DoF branched model: one block per link and pass, straight-line code") {
  const auto m = testing::load(testing::model_file("branched7"));
  for (auto t : {Target::self_language, Target::c99}) {
    const auto p = generate(m, options(t, true));
    CHECK(count_of(p.source_text, "// forward ") == 7);
    CHECK(count_of(p.source_text, "// backward ") == 7);
    const auto ids = identifiers(strip_comments(p.source_text) + strip_comments(p.header_text));
    for (const auto& banned : testing::denylist()) CHECK_MESSAGE(ids.count(banned) == 0, banned);
    CHECK(p.source_text.find("tau_j6") != std::string::npos);
    CHECK(p.source_text.find("v_l7_") != std::string::npos);
    CHECK(p.source_text.find("tau[6] = tau_j7;") != std::string::npos);
  }
}

TEST_CASE("identifiers come from model names") {
  const auto m = testing::load(testing::model_file("slider_leg4"));
  const auto p = generate(m, options(Target::self_language, true));
  CHECK(p.source_text.find("tau_HFE") != std::string::npos);
  CHECK(p.source_text.find("v_upperleg_") != std::string::npos);
  CHECK(p.source_text.find("c_KFE = std::cos(q_KFE)") != std::string::npos);
  const auto c = generate(m, options(Target::c99, true));
  CHECK(c.source_text.find("c_KFE = cos(q_KFE)") != std::string::npos);
  CHECK(c.source_text.find("std::") == std::string::npos);
}

TEST_CASE("flop estimate matches the emitted operators") {
  for (const auto& m : corpus()) {
    if (m.base().mobility == BaseMobility::floating) continue;
    for (bool pre : {true, false}) {
      const auto p = generate(m, options(Target::c99, pre));
      const auto body = strip_comments(p.source_text);
      CHECK(count_of(body, " * ") == p.flops.multiplies());
      CHECK(count_of(body, " + ") + count_of(body, " - ") == p.flops.forward.add + p.flops.backward.add);
      const auto est = emitted_flop_estimate(m, options(Target::self_language, pre));
      CHECK(est.total() == p.flops.total());
      CHECK(est.multiplies() == p.flops.multiplies());
    }
  }
}

TEST_CASE("precomputing constants removes multiplies") {
  std::vector<int> totals;
  for (const auto& m : corpus()) {
    if (m.base().mobility == BaseMobility::floating) continue;
    const auto on = emitted_flop_estimate(m, options(Target::self_language, true));
    const auto off = emitted_flop_estimate(m, options(Target::self_language, false));
    CAPTURE(m.name());
    CHECK(on.multiplies() < off.multiplies());
    CHECK(on.total() <= off.total());
    totals.push_back(on.total());
  }
  // Ordered by DoF: 1, 4, 5, 7.
  CHECK(totals[3] > totals[1]);
}

TEST_CASE("constant transform folding") {
  const auto id = fold_constant_transform(SpatialTransform::identity());
  CHECK(id.rotation_is_identity());
  CHECK(id.translation_is_zero());
  const auto copy = emit_transform_snippet(SpatialTransform::identity(), GenOptions{});
  CHECK(copy.find(" * ") == std::string::npos);
  CHECK(count_of(copy, "out_") == 6);
  CHECK(copy.find("out_vz = in_vz;") != std::string::npos);

  const auto quarter = placement_from_xyz(Vec3::Zero(), Vec3(std::numbers::pi / 2, 0, 0));
  const auto qp = fold_constant_transform(quarter);
  for (auto e : qp.rotation) CHECK(e != EntryClass::general);
  CHECK_FALSE(qp.rotation_is_identity());
  const auto qs = emit_transform_snippet(quarter, GenOptions{});
  CHECK(qs.find(" * ") == std::string::npos);
  CHECK(qs.find("out_wy = in_wz;") != std::string::npos);
  CHECK(qs.find("out_wz = -in_wy;") != std::string::npos);

  testing::Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const auto x = rng.transform();
    const auto plan = fold_constant_transform(x);
    for (auto e : plan.rotation) CHECK(e == EntryClass::general);
    for (auto e : plan.translation) CHECK(e == EntryClass::general);
  }

  GenOptions off;
  off.precompute_constants = false;
  CHECK(emit_transform_snippet(SpatialTransform::identity(), off).find(" * ") != std::string::npos);
}

TEST_CASE("floating base is rejected") {
  const auto m = testing::load(testing::model_file("hyq"));
  try {
    (void)generate(m, GenOptions{});
    FAIL("expected GenerationError");
  } catch (const GenerationError& e) {
    CHECK(e.diagnostic().code == "unsupported-floating-base");
    CHECK(std::string(e.what()).find("floating") != std::string::npos);
  }
  CHECK_THROWS_AS(emitted_flop_estimate(m, GenOptions{}), GenerationError);
}

TEST_CASE("prefix validation and collisions") {
  const auto m = testing::load(testing::model_file("pendulum"));
  for (const char* bad : {"3abc", "for", "has space", "a-b", "__x", "_Cap"}) {
    CAPTURE(bad);
    CHECK_FALSE(is_valid_prefix(bad));
    try {
      (void)generate(m, options(Target::c99, true, bad));
      FAIL("expected GenerationError");
    } catch (const GenerationError& e) {
      CHECK(e.diagnostic().code == "invalid-prefix");
    }
  }
  CHECK(is_valid_prefix("robot_1"));
  CHECK(default_prefix("Pendulum") == "pendulum");
  CHECK(default_prefix("Int") == "int_model");

  // A joint named rnea yields the local c_rnea, the C entry point for prefix c.
  testing::DocBuilder b;
  b.link("a").joint("rnea", 'r', "z");
  const auto clash = testing::load_source(b.text("a via rnea"));
  try {
    (void)generate(clash, options(Target::c99, true, "c"));
    FAIL("expected GenerationError");
  } catch (const GenerationError& e) {
    CHECK(e.diagnostic().code == "name-collision");
  }
  CHECK_NOTHROW(generate(clash, options(Target::c99, true, "arm")));
  CHECK_NOTHROW(generate(clash, options(Target::self_language, true, "c")));
}

TEST_CASE("comments can be turned off") {
  const auto m = testing::load(testing::model_file("mixed5"));
  GenOptions o;
  o.emit_comments = false;
  const auto quiet = generate(m, o);
  const auto loud = generate(m, GenOptions{});
  CHECK(count_of(quiet.source_text, "// velocity") == 0);
  // l1 hangs off the base, so its velocity is the joint velocity and gets no group.
  CHECK(count_of(loud.source_text, "// velocity") == 4);
  CHECK(count_of(quiet.source_text, "// forward ") == 5);
  CHECK(strip_comments(quiet.source_text) != "");
}

TEST_CASE("models without joints still produce a valid entry point") {
  testing::DocBuilder b;
  const auto m = testing::load_source(b.text(""));
  const auto p = generate(m, options(Target::c99, true, "empty"));
  CHECK(p.source_text.find("(void)tau;") != std::string::npos);
  CHECK(p.header_text.find("#define EMPTY_DOF 0") != std::string::npos);
}
