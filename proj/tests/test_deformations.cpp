#include "bicon/deformations.hpp"
#include "bicon/geometry.hpp"

#include <catch_amalgamated.hpp>

using namespace bicon;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<ConeMap> cone_maps(int n) {
  return {ConeMap(ModulusFunction::identity(n)), ConeMap(ModulusFunction::power(0.5, n)),
          ConeMap(ModulusFunction::iterlog(1, 1.0, n)), ConeMap(ModulusFunction::iterlog(2, 1.0, n))};
}

// DH by central differences of cone_map_eval.
Eigen::MatrixXd fd_jacobian(const ConeMap &m, const ConePoint &X, double h) {
  const int n = m.n;
  Eigen::MatrixXd J(n, n);
  for (int j = 0; j < n; ++j) {
    ConePoint P = X, Q = X;
    if (j < n - 1) {
      P.x(j) += h;
      Q.x(j) -= h;
    } else {
      P.t += h;
      Q.t -= h;
    }
    const auto a = cone_map_eval(m, P);
    const auto b = cone_map_eval(m, Q);
    for (int i = 0; i < n - 1; ++i)
      J(i, j) = (a.x(i) - b.x(i)) / (2 * h);
    J(n - 1, j) = (a.t - b.t) / (2 * h);
  }
  return J;
}

} // namespace

TEST_CASE("H fixes the base, the boundary and the origin", "[deformations]") {
  for (int n : {2, 3})
    for (const auto &m : cone_maps(n)) {
      const auto base = sample_cone_interior(n, 100, 1);
      for (const auto &P : base.points) {
        const ConePoint X(P.x, 0.0);
        CHECK((cone_map_eval(m, X).x - X.x).norm() == 0.0);
        CHECK(cone_map_eval(m, X).t == 0.0);
      }
      for (const auto &X : sample_cone_sphere(n, 1.0, NormKind::cone, HalfSpace::upper, 100, 2))
        CHECK(cone_distance(cone_map_eval(m, X), X) <= 1e-15);
      CHECK(cone_norm(cone_map_eval(m, ConePoint::axis(n, 0.0))) == 0.0);
    }
}

TEST_CASE("H on the axis is phi", "[deformations]") {
  const ConeMap m(ModulusFunction::iterlog(2, 1.0, 3));
  for (double t : {0.9, 0.1, 1e-5, 1e-12}) {
    const auto Y = cone_map_eval(m, ConePoint::axis(3, t));
    CHECK(Y.x.norm() == 0.0);
    CHECK_THAT(Y.t, WithinRel(m.phi(t), 1e-15));
  }
}

TEST_CASE("H maps C+ into C+ and preserves horizontal coordinates", "[deformations]") {
  for (const auto &m : cone_maps(3)) {
    for (const auto &X : sample_cone_interior(3, 2000, 4).points) {
      const auto Y = cone_map_eval(m, X);
      CHECK(in_upper_cone(Y, 1e-15));
      CHECK((Y.x - X.x).norm() == 0.0);
      CHECK(Y.t >= X.t); // lambda >= 1
    }
  }
}

TEST_CASE("H rejects points outside the upper cone", "[deformations]") {
  const ConeMap m(ModulusFunction::power(0.5, 2));
  Eigen::VectorXd x(1);
  x << 0.9;
  CHECK_THROWS_AS(cone_map_eval(m, ConePoint(x, 0.5)), std::domain_error);
  CHECK_THROWS_AS(cone_map_eval(m, ConePoint(x, -0.05)), std::domain_error);
  CHECK_THROWS_AS(cone_map_eval(m, ConePoint::axis(3, 0.1)), std::invalid_argument);
}

TEST_CASE("inverse round trip", "[deformations]") {
  for (int n : {2, 3})
    for (const auto &m : cone_maps(n)) {
      double err = 0.0;
      for (const auto &X : sample_cone_interior(n, 2000, 6).points)
        err = std::max(err, cone_distance(cone_map_inverse(m, cone_map_eval(m, X)), X));
      INFO(m.phi.describe());
      CHECK(err <= 1e-9);
    }
}

TEST_CASE("analytic Jacobian", "[deformations]") {
  for (int n : {2, 3})
    for (const auto &m : cone_maps(n)) {
      const double invM = 1.0 / m.phi.M();
      for (const auto &X : sample_cone_interior(n, 200, 8, 1e-3, 1e-3).points) {
        const auto J = cone_map_jacobian(m, X);
        const auto F = fd_jacobian(m, X, 1e-6 * std::min(X.x.norm(), X.t));
        const double scale = std::max(1.0, J.matrix.cwiseAbs().maxCoeff());
        CHECK((J.matrix - F).cwiseAbs().maxCoeff() <= 1e-5 * scale);
        CHECK((J.matrix * J.inverse - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-12);
        CHECK_THAT(J.det, WithinRel(J.matrix.determinant(), 1e-12));
        CHECK_THAT(J.hs_norm, WithinRel(J.matrix.norm(), 1e-12));
        CHECK_THAT(J.inv_hs_norm, WithinRel(J.inverse.norm(), 1e-12));
        const double s = X.x.norm() + X.t;
        CHECK(J.det >= invM - 1e-12);
        CHECK(J.det <= lambda(m.phi, s) + 1e-12);
      }
    }
}

TEST_CASE("Jacobian rejects axis and boundary points", "[deformations]") {
  const ConeMap m(ModulusFunction::power(0.5, 2));
  CHECK_THROWS_AS(cone_map_jacobian(m, ConePoint::axis(2, 0.3)), std::domain_error);
  Eigen::VectorXd x(1);
  x << 0.5;
  CHECK_THROWS_AS(cone_map_jacobian(m, ConePoint(x, 0.0)), std::domain_error);
  CHECK_THROWS_AS(cone_map_jacobian(m, ConePoint(x, 0.5)), std::domain_error);
}

TEST_CASE("glued map", "[deformations]") {
  const GluedMap g{ConeMap(ModulusFunction::iterlog(1, 1.0, 2))};
  const auto &phi = g.cone.phi;
  for (double t : {0.5, 0.01}) {
    CHECK_THAT(glued_eval(g, ConePoint::axis(2, t)).t, WithinRel(phi(t), 1e-15));
    CHECK_THAT(glued_eval(g, ConePoint::axis(2, -t)).t, WithinAbs(-invert(phi, t), 1e-15));
    CHECK_THAT(glued_inverse(g, ConePoint::axis(2, t)).t, WithinAbs(invert(phi, t), 1e-15));
    CHECK_THAT(glued_inverse(g, ConePoint::axis(2, -t)).t, WithinRel(-phi(t), 1e-15));
  }
  // identity outside the double cone
  Eigen::VectorXd x(1);
  x << 0.8;
  const ConePoint far(x, 0.7);
  CHECK(cone_distance(glued_eval(g, far), far) == 0.0);
  // round trip over the whole double cone
  double err = 0.0;
  for (const auto &X : sample_cone_sphere(2, 0.37, NormKind::cone, HalfSpace::both, 500, 3))
    err = std::max(err, cone_distance(glued_inverse(g, glued_eval(g, X)), X));
  CHECK(err <= 1e-9);
}

TEST_CASE("radial maps", "[deformations]") {
  const auto p = RadialMap::power(0.5, 3);
  Eigen::VectorXd x(3);
  x << 0.0, 0.03, 0.04;
  const auto y = radial_eval(p, x);
  CHECK_THAT(y.norm(), WithinRel(std::sqrt(0.05), 1e-14));
  CHECK_THAT(y.normalized().dot(x.normalized()), WithinRel(1.0, 1e-14));
  CHECK((radial_inverse(p, y) - x).norm() <= 1e-14);

  const auto l = RadialMap::log_example(1.0, 2);
  double prev = 0.0;
  for (double r : {1e-12, 1e-6, 1e-3, 0.1, 0.5, 0.99}) {
    const double h = radial_stress(l, r);
    CHECK(h > prev);
    CHECK(h >= r);
    prev = h;
    CHECK_THAT(radial_inverse_stress(l, h), WithinRel(r, 1e-9));
  }
  CHECK(radial_stress(l, 2.0) == 2.0);
  CHECK_THAT(radial_stress(l, 1.0), WithinRel(1.0, 1e-15));
  CHECK_THROWS_AS(RadialMap::power(0.0), std::invalid_argument);
}
