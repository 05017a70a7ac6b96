#pragma once

// The cone map H(x, t) = (x, t lambda(t + |x|)) of C+ onto itself, its inverse
// F, the glued homeomorphism of R^n (H on C+, r F r on C-, identity outside
// the double cone) and radial stretchings h(x) = H(|x|) x / |x|.

#include "bicon/geometry.hpp"
#include "bicon/modulus.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace bicon {

struct ConeMap {
  ModulusFunction phi;
  int n = 2;

  explicit ConeMap(ModulusFunction f) : phi(std::move(f)), n(phi.dimension()) {}
  ConeMap(ModulusFunction f, int dim) : phi(std::move(f)), n(dim) {
    if (n < 2)
      throw std::invalid_argument("ConeMap: n must be >= 2");
  }
};

struct GluedMap {
  ConeMap cone;
  explicit GluedMap(ConeMap c) : cone(std::move(c)) {}
};

struct JacobianData {
  Eigen::MatrixXd matrix;  ///< DH
  Eigen::MatrixXd inverse; ///< (DH)^{-1}
  double det = 0.0;
  double hs_norm = 0.0;      ///< |DH|
  double inv_hs_norm = 0.0;  ///< |(DH)^{-1}|
  double cofactor_norm = 0.0; ///< |adj DH| = det |(DH)^{-1}|
  double inner_distortion = 0.0; ///< |(DH)^{-1}|^n det
};

inline constexpr double kMembershipSlack = 1e-12;

namespace detail {

inline void check_dim(const ConeMap &m, const ConePoint &X, const char *who) {
  if (X.dimension() != m.n)
    throw std::invalid_argument(std::string(who) + ": point has dimension " +
                                std::to_string(X.dimension()) + ", map has " +
                                std::to_string(m.n));
}

// t lambda(t + rho), written as (t/s) phi(s) so that it stays finite for tiny s.
// lambda >= 1, so the clamp only removes rounding below t.
inline double height(const ModulusFunction &phi, double t, double rho) {
  const double s = t + rho;
  if (s <= 0.0)
    return 0.0;
  if (s >= 1.0)
    return t;
  const double v = phi(s);
  if (v == s)
    return t;
  return std::max(t, (t / s) * v);
}

} // namespace detail

/// H(x, t) = (x, t lambda(t + |x|)) on C+.
inline ConePoint cone_map_eval(const ConeMap &m, const ConePoint &X) {
  detail::check_dim(m, X, "cone_map_eval");
  if (!in_upper_cone(X, kMembershipSlack))
    throw std::domain_error("cone_map_eval: point outside the upper cone");
  if (X.t <= 0.0)
    return X;
  return {X.x, detail::height(m.phi, X.t, X.x.norm())};
}

/// DH at an interior off-axis point of C+, with both Hilbert-Schmidt norms in
/// closed form:
///   |DH|^2        = n - 1 + (t lambda')^2 + D^2
///   |(DH)^{-1}|^2 = n - 1 + (1 + (t lambda')^2) / D^2,   D = lambda + t lambda'.
inline JacobianData cone_map_jacobian(const ConeMap &m, const ConePoint &X) {
  detail::check_dim(m, X, "cone_map_jacobian");
  const double rho = X.x.norm();
  const double t = X.t;
  if (rho == 0.0)
    throw std::domain_error("cone_map_jacobian: point on the axis");
  if (!(t > 0.0) || !(rho + t < 1.0))
    throw std::domain_error("cone_map_jacobian: point not interior to the upper cone");

  const int n = m.n;
  const double s = rho + t;
  double lam = 0.0;
  double tlp = 0.0; // t lambda'(s)
  if (m.phi.is_custom()) {
    lam = lambda(m.phi, s);
    tlp = t * lambda_derivative(m.phi, s);
  } else {
    const auto p = m.phi.at_log(-std::log(s));
    lam = 1.0 / p.inv_lambda;
    tlp = (t / s) * lam * (p.q - 1.0);
  }
  const double D = lam + tlp;

  JacobianData J;
  J.matrix = Eigen::MatrixXd::Identity(n, n);
  J.inverse = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n - 1; ++i) {
    const double Di = tlp * X.x(i) / rho;
    J.matrix(n - 1, i) = Di;
    J.inverse(n - 1, i) = -Di / D;
  }
  J.matrix(n - 1, n - 1) = D;
  J.inverse(n - 1, n - 1) = 1.0 / D;
  J.det = D;
  J.hs_norm = std::sqrt((n - 1) + tlp * tlp + D * D);
  J.inv_hs_norm = std::sqrt((n - 1) + (1.0 + tlp * tlp) / (D * D));
  J.cofactor_norm = J.det * J.inv_hs_norm;
  J.inner_distortion = std::pow(J.inv_hs_norm, n) * J.det;
  return J;
}

/// F(y, tau) = (y, T) with T lambda(T + |y|) = tau, by bisection on
/// [0, min(1 - |y|, M tau)].
inline ConePoint cone_map_inverse(const ConeMap &m, const ConePoint &Y, double tol = 1e-12) {
  detail::check_dim(m, Y, "cone_map_inverse");
  if (!(tol > 0.0))
    throw std::invalid_argument("cone_map_inverse: tol must be > 0");
  if (!in_upper_cone(Y, kMembershipSlack))
    throw std::domain_error("cone_map_inverse: point outside the upper cone");
  const double tau = Y.t;
  if (tau <= 0.0)
    return Y;
  const double rho = Y.x.norm();
  if (rho == 0.0)
    return {Y.x, invert(m.phi, tau, tol)};
  if (rho + tau >= 1.0)
    return Y;
  const double hi = std::min(1.0 - rho, std::max(1.0, m.phi.M()) * tau);
  const auto res = solve_increasing([&](double T) { return detail::height(m.phi, T, rho); }, tau,
                                    0.0, hi, tol);
  return {Y.x, res.root};
}

/// H on C+, r F r on C-, identity outside the double cone.
inline ConePoint glued_eval(const GluedMap &g, const ConePoint &X, double tol = 1e-12) {
  if (cone_norm(X) > 1.0)
    return X;
  if (X.t >= 0.0)
    return cone_map_eval(g.cone, X);
  return reflect(cone_map_inverse(g.cone, reflect(X), tol));
}

/// F on C+, r H r on C-, identity outside the double cone.
inline ConePoint glued_inverse(const GluedMap &g, const ConePoint &Y, double tol = 1e-12) {
  if (cone_norm(Y) > 1.0)
    return Y;
  if (Y.t >= 0.0)
    return cone_map_inverse(g.cone, Y, tol);
  return reflect(cone_map_eval(g.cone, reflect(Y)));
}

// ---------------------------------------------------------------------------
// Radial stretchings

struct PowerStress {
  double eps = 1.0;
};

/// H(rho) = (1 - log rho)^{-1/n} [log(e - log rho)]^{-beta} on (0, 1],
/// identity beyond 1.
struct LogExampleStress {
  double beta = 1.0;
  int n = 2;
};

struct RadialMap {
  std::variant<PowerStress, LogExampleStress> stress;
  int n = 2;

  static RadialMap power(double eps, int n = 2) {
    if (!(eps > 0.0))
      throw std::invalid_argument("radial power: eps must be > 0");
    return {PowerStress{eps}, n};
  }
  static RadialMap log_example(double beta = 1.0, int n = 2) {
    if (!(beta > 0.0))
      throw std::invalid_argument("radial log example: beta must be > 0");
    return {LogExampleStress{beta, n}, n};
  }
};

/// The stress function H(rho).
inline double radial_stress(const RadialMap &r, double rho) {
  if (!(rho >= 0.0))
    throw std::invalid_argument("radial_stress: rho must be >= 0");
  if (rho == 0.0)
    return 0.0;
  return std::visit(
      [&](const auto &s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PowerStress>) {
          return std::pow(rho, s.eps);
        } else {
          if (rho >= 1.0)
            return rho;
          const double u = -std::log(rho);
          return std::pow(1.0 + u, -1.0 / s.n) * std::pow(std::log(std::numbers::e + u), -s.beta);
        }
      },
      r.stress);
}

/// The inverse stress F = H^{-1}.
inline double radial_inverse_stress(const RadialMap &r, double v, double tol = 1e-12) {
  if (!(v >= 0.0))
    throw std::invalid_argument("radial_inverse_stress: v must be >= 0");
  if (v == 0.0)
    return 0.0;
  return std::visit(
      [&](const auto &s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PowerStress>) {
          return std::pow(v, 1.0 / s.eps);
        } else {
          if (v >= 1.0)
            return v;
          return solve_increasing([&](double x) { return radial_stress(r, x); }, v, 0.0, 1.0, tol)
              .root;
        }
      },
      r.stress);
}

inline Eigen::VectorXd radial_eval(const RadialMap &r, const Eigen::VectorXd &x) {
  const double rho = x.norm();
  if (rho == 0.0)
    return x;
  return (radial_stress(r, rho) / rho) * x;
}

inline Eigen::VectorXd radial_inverse(const RadialMap &r, const Eigen::VectorXd &y,
                                      double tol = 1e-12) {
  const double rho = y.norm();
  if (rho == 0.0)
    return y;
  return (radial_inverse_stress(r, rho, tol) / rho) * y;
}

/// Radial maps act on R^n; these adapt them to ConePoint = (x, t) coordinates.
inline ConePoint as_cone_point(const Eigen::VectorXd &v) {
  const auto n = v.size();
  return {v.head(n - 1), v(n - 1)};
}

inline Eigen::VectorXd as_vector(const ConePoint &X) {
  Eigen::VectorXd v(X.x.size() + 1);
  v << X.x, X.t;
  return v;
}

} // namespace bicon
