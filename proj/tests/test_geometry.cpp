#include "bicon/geometry.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace bicon;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ConePoint pt(std::initializer_list<double> x, double t) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
  Eigen::Index i = 0;
  for (double c : x)
    v(i++) = c;
  return {v, t};
}

} // namespace

TEST_CASE("norms and reflection", "[geometry]") {
  const auto X = pt({3.0, 4.0}, -2.0);
  CHECK(cone_norm(X) == 7.0);
  CHECK_THAT(euclid_norm(X), WithinRel(std::sqrt(29.0), 1e-15));
  CHECK(reflect(X).t == 2.0);
  CHECK(cone_distance(X, reflect(X)) == 4.0);
  CHECK(norm(X, NormKind::cone) == cone_norm(X));
  CHECK(X.dimension() == 3);
}

TEST_CASE("cone membership", "[geometry]") {
  CHECK(in_upper_cone(pt({0.5}, 0.5)));
  CHECK_FALSE(in_upper_cone(pt({0.5}, 0.6)));
  CHECK_FALSE(in_upper_cone(pt({0.1}, -0.1)));
  CHECK(in_lower_cone(pt({0.1}, -0.1)));
  CHECK(in_double_cone(pt({0.2}, -0.8)));
  CHECK(in_upper_cone(pt({0.5}, 0.5 + 1e-13), 1e-12));
}

TEST_CASE("volumes", "[geometry]") {
  CHECK_THAT(ball_volume(1), WithinRel(2.0, 1e-15));
  CHECK_THAT(ball_volume(2), WithinRel(std::numbers::pi, 1e-15));
  CHECK_THAT(ball_volume(3), WithinRel(4.0 * std::numbers::pi / 3.0, 1e-15));
  CHECK_THAT(sphere_measure(0), WithinRel(2.0, 1e-15));
  CHECK_THAT(sphere_measure(1), WithinRel(2.0 * std::numbers::pi, 1e-15));
  CHECK_THAT(sphere_measure(2), WithinRel(4.0 * std::numbers::pi, 1e-15));
  CHECK_THAT(upper_cone_volume(2), WithinRel(1.0, 1e-15));
  CHECK_THAT(upper_cone_volume(3), WithinRel(std::numbers::pi / 3.0, 1e-15));
}

TEST_CASE("sphere samples lie on the sphere", "[geometry]") {
  for (int n : {2, 3, 4})
    for (auto nk : {NormKind::cone, NormKind::euclid})
      for (auto half : {HalfSpace::upper, HalfSpace::lower, HalfSpace::both}) {
        const auto pts = sample_cone_sphere(n, 0.3, nk, half, 200, 5);
        REQUIRE(pts.size() == 200);
        for (const auto &X : pts) {
          CHECK_THAT(norm(X, nk), WithinRel(0.3, 1e-14));
          if (half == HalfSpace::upper)
            CHECK(X.t >= 0.0);
          if (half == HalfSpace::lower)
            CHECK(X.t <= 0.0);
        }
      }
}

TEST_CASE("axis points come first", "[geometry]") {
  const auto both = sample_cone_sphere(3, 0.5, NormKind::cone, HalfSpace::both, 10, 1);
  CHECK(both[0].x.norm() == 0.0);
  CHECK(both[0].t == 0.5);
  CHECK(both[1].t == -0.5);
  const auto lower = sample_cone_sphere(3, 0.5, NormKind::cone, HalfSpace::lower, 1, 1);
  REQUIRE(lower.size() == 1);
  CHECK(lower[0].t == -0.5);
}

TEST_CASE("sphere samples are nested in count", "[geometry]") {
  const auto small = sample_cone_sphere(3, 1.0, NormKind::euclid, HalfSpace::both, 64, 9);
  const auto large = sample_cone_sphere(3, 1.0, NormKind::euclid, HalfSpace::both, 512, 9);
  for (std::size_t i = 0; i < small.size(); ++i) {
    CHECK(small[i].t == large[i].t);
    CHECK((small[i].x - large[i].x).norm() == 0.0);
  }
}

TEST_CASE("sphere sampler rejects bad input", "[geometry]") {
  CHECK_THROWS_AS(sample_cone_sphere(1, 1.0, NormKind::cone, HalfSpace::both, 4, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_cone_sphere(2, 0.0, NormKind::cone, HalfSpace::both, 4, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_cone_sphere(2, 2.0, NormKind::cone, HalfSpace::upper, 4, 0, true),
                  std::invalid_argument);
}

TEST_CASE("interior samples", "[geometry]") {
  for (int n : {2, 3}) {
    const auto s = sample_cone_interior(n, 20000, 3, 1e-3, 1e-3);
    REQUIRE(s.points.size() == 20000);
    for (const auto &X : s.points) {
      CHECK(in_upper_cone(X));
      CHECK(X.x.norm() >= 1e-3);
      CHECK(X.t >= 1e-3);
    }
    // vol(C+) / vol(cylinder) = 1/n; margins remove O(1e-3).
    const double p = 1.0 / n;
    CHECK(std::abs(s.acceptance_rate - p) < 4.0 * std::sqrt(p * (1 - p) / s.trials) + 1e-2);
  }
  const auto a = sample_cone_interior(3, 100, 11);
  const auto b = sample_cone_interior(3, 100, 11);
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK(a.points[i].t == b.points[i].t);
}
