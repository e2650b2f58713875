#pragma once

#include <random>
#include <string>

#include "robodsl/corpus.hpp"
#include "robodsl/frontend.hpp"
#include "robodsl/spatial.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(ROBODSL_FIXTURES_DIR) / name; }

inline std::filesystem::path model_file(const std::string& name) {
  return robodsl::default_corpus_dir() / (name + ".robot");
}

inline robodsl::RobotModel load(const std::filesystem::path& path) {
  auto r = robodsl::load_model_file(path);
  if (!r.model) throw std::runtime_error("cannot load " + path.string());
  return std::move(*r.model);
}

inline robodsl::RobotModel load_source(const std::string& text) {
  auto r = robodsl::load_model(text);
  if (!r.model) {
    std::string msg = "invalid test document";
    for (const auto& d : r.diagnostics) msg += "\n" + robodsl::format_diagnostic(d);
    throw std::runtime_error(msg);
  }
  return std::move(*r.model);
}

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  robodsl::Vec3 vec3(double s = 1.0) { return {s * uniform(), s * uniform(), s * uniform()}; }
  robodsl::SpatialVector spatial(double s = 1.0) { return {vec3(s), vec3(s)}; }
  robodsl::SpatialTransform transform() {
    return robodsl::placement_from_xyz(vec3(0.5), {uniform(-3.1, 3.1), uniform(-3.1, 3.1), uniform(-3.1, 3.1)});
  }
  robodsl::SpatialInertia inertia() {
    robodsl::SpatialInertia in;
    in.mass = uniform(0.5, 5.0);
    in.com = vec3(0.3);
    const robodsl::Vec3 d(uniform(0.01, 0.2), uniform(0.01, 0.2), uniform(0.01, 0.2));
    const auto r = transform().rotation;
    const robodsl::Mat3 ic = r.transpose() * d.asDiagonal() * r;
    const robodsl::Mat3 cx = robodsl::skew(in.com);
    in.rot_inertia = ic - in.mass * cx * cx;
    return in;
  }

  std::mt19937_64 gen;
};

inline double max_abs_diff(const robodsl::SpatialVector& a, const robodsl::SpatialVector& b) {
  return (a.to_vec6() - b.to_vec6()).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const robodsl::SpatialTransform& a, const robodsl::SpatialTransform& b) {
  return std::max((a.rotation - b.rotation).cwiseAbs().maxCoeff(), (a.translation - b.translation).cwiseAbs().maxCoeff());
}

}  // namespace testing
