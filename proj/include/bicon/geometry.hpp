#pragma once

// R^{n-1} x R with the cone norm ||(x, t)|| = |x| + |t|. Its closed unit ball
// is the double cone C = C+ u C-, where
//   C+ = {|x| + t <= 1, t >= 0},   C- = {|x| - t <= 1, t <= 0}.

#include "bicon/numerics.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/erf.hpp>
#include <boost/random/sobol.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace bicon {

struct ConePoint {
  Eigen::VectorXd x; ///< horizontal part, length n - 1
  double t = 0.0;    ///< vertical coordinate

  ConePoint() = default;
  ConePoint(Eigen::VectorXd x_, double t_) : x(std::move(x_)), t(t_) {}

  int dimension() const { return static_cast<int>(x.size()) + 1; }
  double radial() const { return x.norm(); }

  static ConePoint axis(int n, double t) { return {Eigen::VectorXd::Zero(n - 1), t}; }
};

enum class NormKind { cone, euclid };
enum class HalfSpace { upper, lower, both };

inline double cone_norm(const ConePoint &X) { return X.x.norm() + std::abs(X.t); }
inline double euclid_norm(const ConePoint &X) { return std::hypot(X.x.norm(), X.t); }

inline double norm(const ConePoint &X, NormKind k) {
  return k == NormKind::cone ? cone_norm(X) : euclid_norm(X);
}

inline ConePoint reflect(const ConePoint &X) { return {X.x, -X.t}; }

inline ConePoint operator-(const ConePoint &a, const ConePoint &b) { return {a.x - b.x, a.t - b.t}; }
inline ConePoint operator+(const ConePoint &a, const ConePoint &b) { return {a.x + b.x, a.t + b.t}; }
inline ConePoint operator*(double c, const ConePoint &a) { return {c * a.x, c * a.t}; }

inline double cone_distance(const ConePoint &a, const ConePoint &b) { return cone_norm(a - b); }
inline double euclid_distance(const ConePoint &a, const ConePoint &b) { return euclid_norm(a - b); }

/// slack widens the closed set by an absolute amount (for rounding).
inline bool in_upper_cone(const ConePoint &X, double slack = 0.0) {
  return X.t >= -slack && X.x.norm() + X.t <= 1.0 + slack;
}
inline bool in_lower_cone(const ConePoint &X, double slack = 0.0) {
  return X.t <= slack && X.x.norm() - X.t <= 1.0 + slack;
}
inline bool in_double_cone(const ConePoint &X, double slack = 0.0) {
  return cone_norm(X) <= 1.0 + slack;
}

/// Volume of the unit ball in R^d.
inline double ball_volume(int d) {
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

/// Surface measure of the unit sphere S^d in R^{d+1} (sigma_0 = 2).
inline double sphere_measure(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

/// vol(C+) = vol(B^{n-1}) / n.
inline double upper_cone_volume(int n) { return ball_volume(n - 1) / n; }

namespace detail {

// Scrambled Sobol points: Cranley-Patterson rotation by a seeded shift.
class ShiftedSobol {
public:
  ShiftedSobol(unsigned dims, std::uint64_t seed) : gen_(dims), shift_(dims) {
    std::mt19937_64 rng(seed);
    for (auto &s : shift_)
      s = uniform01(rng);
  }

  void next(std::vector<double> &out) {
    out.resize(shift_.size());
    for (std::size_t i = 0; i < shift_.size(); ++i) {
      const double v = static_cast<double>(gen_() >> 11) * 0x1.0p-53 + shift_[i];
      out[i] = v >= 1.0 ? v - 1.0 : v;
    }
  }

private:
  boost::random::sobol gen_;
  std::vector<double> shift_;
};

// Unit vector in R^d from d (or 1 when d <= 2) uniform coordinates.
inline Eigen::VectorXd unit_direction(int d, const double *c) {
  Eigen::VectorXd v(d);
  if (d == 1) {
    v(0) = c[0] < 0.5 ? -1.0 : 1.0;
  } else if (d == 2) {
    const double a = 2.0 * std::numbers::pi * c[0];
    v << std::cos(a), std::sin(a);
  } else {
    for (int i = 0; i < d; ++i) {
      const double p = std::clamp(c[i], 1e-12, 1.0 - 1e-12);
      v(i) = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * p - 1.0);
    }
    const double nv = v.norm();
    if (nv == 0.0)
      v.setUnit(0);
    else
      v /= nv;
  }
  return v;
}

} // namespace detail

/// Low-discrepancy points on {norm(X) = r}, restricted to a half-space.
/// The axis points (0, r) and/or (0, -r) come first and count toward count.
/// With require_upper set, r > 1 on the upper half is rejected (the sphere
/// would leave C+).
inline std::vector<ConePoint> sample_cone_sphere(int n, double r, NormKind norm_kind,
                                                 HalfSpace half, int count, std::uint64_t seed,
                                                 bool require_upper = false) {
  if (n < 2)
    throw std::invalid_argument("sample_cone_sphere: n must be >= 2");
  if (!(r > 0.0))
    throw std::invalid_argument("sample_cone_sphere: r must be > 0");
  if (count < 1)
    throw std::invalid_argument("sample_cone_sphere: count must be >= 1");
  if (require_upper && half == HalfSpace::upper && r > 1.0)
    throw std::invalid_argument("sample_cone_sphere: r > 1 leaves the upper cone");

  std::vector<ConePoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  if (half != HalfSpace::lower)
    pts.push_back(ConePoint::axis(n, r));
  if (half != HalfSpace::upper && static_cast<int>(pts.size()) < count)
    pts.push_back(ConePoint::axis(n, -r));

  const int d = n - 1;
  const int dir_dims = d <= 2 ? 1 : d;
  detail::ShiftedSobol qrng(static_cast<unsigned>(dir_dims + 1), seed);
  std::vector<double> c;
  while (static_cast<int>(pts.size()) < count) {
    qrng.next(c);
    const Eigen::VectorXd dir = detail::unit_direction(d, c.data());
    const double v = c[static_cast<std::size_t>(dir_dims)];
    // sigma in [-1, 1] is the signed vertical share of the radius.
    double sigma = half == HalfSpace::upper ? v : half == HalfSpace::lower ? -v : 2.0 * v - 1.0;
    double xr = 0.0;
    double t = 0.0;
    if (norm_kind == NormKind::cone) {
      t = r * sigma;
      xr = r - std::abs(t);
    } else {
      const double ang = 0.5 * std::numbers::pi * sigma;
      t = r * std::sin(ang);
      xr = r * std::cos(ang);
    }
    pts.emplace_back(xr * dir, t);
  }
  return pts;
}

struct InteriorSample {
  std::vector<ConePoint> points;
  long long trials = 0;
  double acceptance_rate = 0.0; ///< accepted / trials, trials uniform in the cylinder
};

/// Seeded uniform points of C+ at distance >= boundary_margin from its
/// boundary and with |x| >= axis_margin, by rejection from the cylinder
/// B^{n-1} x [0, 1]. Throws once the acceptance rate is below 1e-3.
inline InteriorSample sample_cone_interior(int n, int count, std::uint64_t seed,
                                           double axis_margin = 0.0,
                                           double boundary_margin = 0.0) {
  if (n < 2)
    throw std::invalid_argument("sample_cone_interior: n must be >= 2");
  if (!(axis_margin >= 0.0) || !(boundary_margin >= 0.0))
    throw std::invalid_argument("sample_cone_interior: margins must be >= 0");
  if (count < 0)
    throw std::invalid_argument("sample_cone_interior: count must be >= 0");

  InteriorSample out;
  out.points.reserve(static_cast<std::size_t>(count));
  std::mt19937_64 rng(seed);
  const int d = n - 1;
  Eigen::VectorXd x(d);
  while (static_cast<int>(out.points.size()) < count) {
    do {
      for (int i = 0; i < d; ++i)
        x(i) = 2.0 * uniform01(rng) - 1.0;
    } while (x.squaredNorm() > 1.0);
    const double t = uniform01(rng);
    ++out.trials;
    const double rho = x.norm();
    const double dist = std::min(t, (1.0 - rho - t) / std::numbers::sqrt2);
    if (rho >= axis_margin && dist >= boundary_margin)
      out.points.emplace_back(x, t);
    if (out.trials % 1000 == 0 &&
        static_cast<double>(out.points.size()) < 1e-3 * static_cast<double>(out.trials))
      throw std::runtime_error("sample_cone_interior: acceptance rate below 1e-3");
  }
  out.acceptance_rate =
      out.trials > 0 ? static_cast<double>(out.points.size()) / static_cast<double>(out.trials)
                     : 0.0;
  return out;
}

} // namespace bicon
