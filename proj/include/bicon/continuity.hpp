#pragma once

// Empirical moduli of continuity, linear dilatation, quasi-inverse and
// doubling probes, and the verification suites for the glued deformation.

#include "bicon/deformations.hpp"
#include "bicon/geometry.hpp"
#include "bicon/modulus.hpp"
#include "bicon/report.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bicon {

/// A homeomorphism with its inverse, in ConePoint coordinates.
struct Deformation {
  std::string name;
  int n = 2;
  HalfSpace domain = HalfSpace::both; ///< upper for the bare cone map
  NormKind natural_norm = NormKind::cone;
  std::function<ConePoint(const ConePoint &)> forward;
  std::function<ConePoint(const ConePoint &)> inverse;

  ConePoint operator()(const ConePoint &X) const { return forward(X); }
  bool in_domain(const ConePoint &X) const {
    return domain != HalfSpace::upper || in_upper_cone(X, kMembershipSlack);
  }
};

inline Deformation make_deformation(const ConeMap &m, double tol = 1e-12) {
  return {"cone:phi=" + m.phi.describe(), m.n, HalfSpace::upper, NormKind::cone,
          [m](const ConePoint &X) { return cone_map_eval(m, X); },
          [m, tol](const ConePoint &Y) { return cone_map_inverse(m, Y, tol); }};
}

inline Deformation make_deformation(const GluedMap &g, double tol = 1e-12) {
  return {"glued:phi=" + g.cone.phi.describe(), g.cone.n, HalfSpace::both, NormKind::cone,
          [g, tol](const ConePoint &X) { return glued_eval(g, X, tol); },
          [g, tol](const ConePoint &Y) { return glued_inverse(g, Y, tol); }};
}

inline Deformation make_deformation(const RadialMap &r, double tol = 1e-12) {
  return {"radial", r.n, HalfSpace::both, NormKind::euclid,
          [r](const ConePoint &X) { return as_cone_point(radial_eval(r, as_vector(X))); },
          [r, tol](const ConePoint &Y) { return as_cone_point(radial_inverse(r, as_vector(Y), tol)); }};
}

inline Deformation identity_deformation(int n) {
  auto id = [](const ConePoint &X) { return X; };
  return {"identity", n, HalfSpace::both, NormKind::cone, id, id};
}

inline Deformation inverse_of(const Deformation &d) {
  Deformation inv = d;
  inv.name = "inverse(" + d.name + ")";
  std::swap(inv.forward, inv.inverse);
  return inv;
}

struct ModulusEstimate {
  ConePoint center;
  std::vector<double> radii;
  std::vector<double> values;
  NormKind norm_used = NormKind::cone;
  int samples_per_radius = 0;
  std::uint64_t seed = 0;
};

enum class Verdict { qc_consistent, qc_violated };

inline const char *to_string(Verdict v) {
  return v == Verdict::qc_consistent ? "qc_consistent" : "qc_violated";
}

struct DilatationEstimate {
  ConePoint center;
  std::vector<double> radii;
  std::vector<double> ratios;
  Verdict verdict = Verdict::qc_consistent;
};

namespace detail {

// Sphere of the given radius about center, restricted to the map's domain.
inline std::vector<ConePoint> sphere_about(const Deformation &f, const ConePoint &center,
                                           double radius, NormKind norm_kind, int count,
                                           std::uint64_t seed) {
  const bool at_base = center.t == 0.0 && center.x.norm() == 0.0;
  const HalfSpace half = f.domain == HalfSpace::upper && at_base ? HalfSpace::upper : HalfSpace::both;
  auto pts = sample_cone_sphere(f.n, radius, norm_kind, half, count, seed);
  std::vector<ConePoint> out;
  out.reserve(pts.size());
  for (auto &p : pts) {
    ConePoint X = center + p;
    if (f.in_domain(X))
      out.push_back(std::move(X));
  }
  if (out.empty())
    throw std::domain_error("sphere of radius " + format_double(radius) +
                            " has no sample inside the map's domain");
  return out;
}

struct Displacements {
  double max = 0.0;
  double min = std::numeric_limits<double>::infinity();
};

inline Displacements displacements(const Deformation &f, const ConePoint &center, double radius,
                                   NormKind norm_kind, int count, std::uint64_t seed) {
  const ConePoint fc = f(center);
  Displacements d;
  for (const auto &X : sphere_about(f, center, radius, norm_kind, count, seed)) {
    const double v = norm(f(X) - fc, norm_kind);
    d.max = std::max(d.max, v);
    d.min = std::min(d.min, v);
  }
  return d;
}

} // namespace detail

/// Sampled max of ||f(X) - f(center)|| over the sphere ||X - center|| = radius.
/// Axis points are always in the sample.
inline double optimal_modulus(const Deformation &f, const ConePoint &center, double radius,
                              NormKind norm_kind, int count, std::uint64_t seed) {
  return detail::displacements(f, center, radius, norm_kind, count, seed).max;
}

/// optimal_modulus over a radius grid. Because the displacement sup over a
/// ball is attained on its boundary sphere, every sampled value is also a
/// lower bound at all larger radii; values are their running maximum.
inline ModulusEstimate estimate_modulus(const Deformation &f, const ConePoint &center,
                                        std::vector<double> radii, NormKind norm_kind, int count,
                                        std::uint64_t seed) {
  std::sort(radii.begin(), radii.end());
  ModulusEstimate e{center, radii, {}, norm_kind, count, seed};
  double run = 0.0;
  for (double r : radii) {
    run = std::max(run, optimal_modulus(f, center, r, norm_kind, count, seed));
    e.values.push_back(run);
  }
  return e;
}

/// Ratio of max to min displacement per radius. The verdict is qc_violated
/// when the largest ratio exceeds threshold, the radii span at least four
/// dyadic steps and the ratio at the smallest radius is at least the ratio
/// at the largest.
inline DilatationEstimate linear_dilatation(const Deformation &f, const ConePoint &center,
                                            std::vector<double> radii, int count,
                                            std::uint64_t seed, double threshold = 1e3,
                                            std::optional<NormKind> norm_kind = std::nullopt) {
  if (radii.empty())
    throw std::invalid_argument("linear_dilatation: empty radius list");
  std::sort(radii.begin(), radii.end());
  DilatationEstimate d{center, radii, {}, Verdict::qc_consistent};
  const NormKind nk = norm_kind.value_or(f.natural_norm);
  for (double r : radii) {
    if (!(r > 0.0))
      throw std::invalid_argument("linear_dilatation: radii must be > 0");
    const auto dd = detail::displacements(f, center, r, nk, count, seed);
    d.ratios.push_back(dd.min > 0.0 ? dd.max / dd.min : std::numeric_limits<double>::infinity());
  }
  const double rmax = *std::max_element(d.ratios.begin(), d.ratios.end());
  const bool span = radii.back() >= 16.0 * radii.front();
  const bool growing = d.ratios.front() >= d.ratios.back();
  if (rmax > threshold && span && growing)
    d.verdict = Verdict::qc_violated;
  return d;
}

struct QuasiInverseReport {
  std::vector<double> radii;
  std::vector<double> hf; ///< omega_h(omega_f(s)) / s
  std::vector<double> fh; ///< omega_f(omega_h(t)) / t
  double K = 1.0;         ///< smallest K with all ratios in [1/K, K]
};

/// Tabulates both composed modulus ratios at center and at its image.
inline QuasiInverseReport quasi_inverse_check(const Deformation &h, const Deformation &f,
                                              const ConePoint &center, std::vector<double> radii,
                                              int count, std::uint64_t seed,
                                              std::optional<NormKind> norm_kind = std::nullopt) {
  std::sort(radii.begin(), radii.end());
  const NormKind nk = norm_kind.value_or(h.natural_norm);
  const ConePoint image = h(center);
  QuasiInverseReport rep;
  rep.radii = radii;
  auto widen = [&](double v) {
    if (v > 0.0)
      rep.K = std::max(rep.K, std::max(v, 1.0 / v));
    else
      rep.K = std::numeric_limits<double>::infinity();
  };
  for (double s : radii) {
    const double wf = optimal_modulus(f, image, s, nk, count, seed);
    const double hf = wf > 0.0 ? optimal_modulus(h, center, wf, nk, count, seed) / s : 0.0;
    const double wh = optimal_modulus(h, center, s, nk, count, seed);
    const double fh = wh > 0.0 ? optimal_modulus(f, image, wh, nk, count, seed) / s : 0.0;
    rep.hf.push_back(hf);
    rep.fh.push_back(fh);
    widen(hf);
    widen(fh);
  }
  return rep;
}

struct PointTriple {
  ConePoint x0, x1, x2;
};

/// max over triples of |f(x1) - f(x0)| / |f(x2) - f(x0)|; each triple must
/// have |x1 - x0| <= lambda_bound |x2 - x0|.
inline double three_points_ratio(const Deformation &f, const std::vector<PointTriple> &triples,
                                 double lambda_bound, NormKind norm_kind = NormKind::euclid) {
  double best = 0.0;
  for (const auto &tr : triples) {
    const double d1 = norm(tr.x1 - tr.x0, norm_kind);
    const double d2 = norm(tr.x2 - tr.x0, norm_kind);
    if (!(d2 > 0.0) || d1 > lambda_bound * d2 * (1.0 + 1e-12))
      throw std::invalid_argument("three_points_ratio: triple violates |x1-x0| <= lambda |x2-x0|");
    const ConePoint f0 = f(tr.x0);
    const double num = norm(f(tr.x1) - f0, norm_kind);
    const double den = norm(f(tr.x2) - f0, norm_kind);
    best = std::max(best, den > 0.0 ? num / den : std::numeric_limits<double>::infinity());
  }
  return best;
}

/// max of omega(factor t) / omega(t) over radius pairs (t, factor t) present
/// in the estimate (matched to relative 1e-9).
inline double doubling_probe(const ModulusEstimate &e, double factor) {
  if (!(factor >= 1.0))
    throw std::invalid_argument("doubling_probe: factor must be >= 1");
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < e.radii.size(); ++i) {
    const double target = factor * e.radii[i];
    for (std::size_t j = 0; j < e.radii.size(); ++j) {
      if (std::abs(e.radii[j] - target) <= 1e-9 * target && e.values[i] > 0.0) {
        best = std::max(best, e.values[j] / e.values[i]);
        any = true;
      }
    }
  }
  if (!any)
    throw std::invalid_argument("doubling_probe: no radius pair (t, factor*t) in the estimate");
  return best;
}

// ---------------------------------------------------------------------------
// Global moduli

namespace detail {

// Pairs in the scaled upper cone c C+: half independent uniform pairs, half
// X' = X + 10^{-6v} (Z - X) with Z uniform, which stays inside by convexity
// and covers separations down to 1e-6 of the diameter.
inline std::vector<std::pair<ConePoint, ConePoint>> cone_pairs(int n, int pairs, std::uint64_t seed,
                                                               double scale) {
  auto pts = sample_cone_interior(n, 2 * pairs, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<ConePoint, ConePoint>> out;
  out.reserve(static_cast<std::size_t>(pairs));
  for (int i = 0; i < pairs; ++i) {
    ConePoint X = scale * pts.points[static_cast<std::size_t>(2 * i)];
    ConePoint Z = scale * pts.points[static_cast<std::size_t>(2 * i + 1)];
    if (i % 2 == 1) {
      const double c = std::pow(10.0, -6.0 * uniform01(rng));
      Z = X + c * (Z - X);
    }
    out.emplace_back(std::move(X), std::move(Z));
  }
  return out;
}

} // namespace detail

/// ||H(X) - H(X')|| <= 4 phi(||X - X'||) on random pairs of C+; the measured
/// constant is the largest observed ||H(X) - H(X')|| / phi(||X - X'||).
inline VerificationReport verify_global_modulus_H(const ConeMap &m, int pairs, std::uint64_t seed) {
  VerificationReport rep;
  rep.suite = "global-modulus-h";
  double worst = 0.0;
  for (const auto &[X, Xp] : detail::cone_pairs(m.n, pairs, seed, 1.0)) {
    const double d = cone_distance(X, Xp);
    if (d == 0.0)
      continue;
    const double v = cone_distance(cone_map_eval(m, X), cone_map_eval(m, Xp));
    worst = std::max(worst, v / m.phi(d));
  }
  rep.add({"H_global_4phi", worst <= 4.0 + 1e-12, worst, pairs, 1e-12, seed,
           "max ||H(X)-H(X')|| / phi(||X-X'||), bound 4"});

  // Colinear axis pairs: |phi(t) - phi(t')| <= phi(|t - t'|) on (0, r] by concavity.
  const double r = m.phi.concavity_radius();
  const auto ts = log_grid(1e-12 * r, r, 64);
  double axis = 0.0;
  for (double t : ts)
    for (double tp : ts)
      if (tp < t)
        axis = std::max(axis, (m.phi(t) - m.phi(tp)) / m.phi(t - tp));
  rep.add({"H_axis_pairs", axis <= 1.0 + 1e-12, axis, 64 * 63 / 2, 1e-12, std::nullopt,
           "max |phi(t)-phi(t')| / phi(|t-t'|) for t, t' in (0, r]"});
  return rep;
}

/// ||F(Y) - F(Y')|| <= 3 M phi(||Y - Y'||) for ||Y||, ||Y'|| <= r/M, with M and
/// r taken from the modulus; for general pairs of C+ the measured constant is
/// recorded.
inline VerificationReport verify_global_modulus_F(const ConeMap &m, int pairs, std::uint64_t seed,
                                                  double tol = 1e-12) {
  VerificationReport rep;
  rep.suite = "global-modulus-f";
  const double M = m.phi.M();
  const double r = m.phi.concavity_radius();
  auto ratio_over = [&](const std::vector<std::pair<ConePoint, ConePoint>> &ps) {
    double worst = 0.0;
    for (const auto &[Y, Yp] : ps) {
      const double d = cone_distance(Y, Yp);
      if (d == 0.0)
        continue;
      const double v = cone_distance(cone_map_inverse(m, Y, tol), cone_map_inverse(m, Yp, tol));
      worst = std::max(worst, v / m.phi(d));
    }
    return worst;
  };
  const double near = ratio_over(detail::cone_pairs(m.n, pairs, seed, r / M));
  rep.add({"F_near_origin_3M", near <= 3.0 * M + 1e-12, near, pairs, 1e-12, seed,
           "max ||F(Y)-F(Y')|| / phi(||Y-Y'||) over ||Y||, ||Y'|| <= r/M; bound 3M = " +
               format_double(3.0 * M)});
  const double global = ratio_over(detail::cone_pairs(m.n, pairs, seed + 1, 1.0));
  rep.add({"F_global", std::isfinite(global), global, pairs, 0.0, seed + 1,
           "measured global constant C in ||F(Y)-F(Y')|| <= C phi(||Y-Y'||)"});

  // Antipodal base pairs (x, 0), (-x, 0): F is the identity on the base.
  double base = 0.0;
  for (double rho : log_grid(1e-9, 0.5, 32)) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m.n - 1);
    x(0) = rho;
    const ConePoint Y(x, 0.0), Yp(-x, 0.0);
    const double v = cone_distance(cone_map_inverse(m, Y, tol), cone_map_inverse(m, Yp, tol));
    base = std::max(base, v / m.phi(cone_distance(Y, Yp)));
  }
  rep.add({"F_base_antipodal", std::isfinite(base), base, 32, 0.0, std::nullopt,
           "antipodal base pairs, ratio to phi"});
  return rep;
}

// ---------------------------------------------------------------------------
// Averaging lemma

/// A non-increasing integrable Phi on (0, r], optionally with a log-space form
/// u -> s Phi(s) at s = e^{-u} that stays meaningful below the double range.
struct LemmaFunction {
  std::function<double(double)> Phi;
  std::function<double(double)> s_Phi_of_u;
};

inline LemmaFunction lemma_function(std::function<double(double)> Phi) {
  LemmaFunction L;
  L.Phi = Phi;
  L.s_Phi_of_u = [Phi](double u) {
    const double s = std::exp(-u);
    return s > 0.0 ? s * Phi(s) : 0.0;
  };
  return L;
}

/// Phi = phi'. In log form s phi'(s) = phi(s) q(s), evaluated through u.
inline LemmaFunction derivative_lemma_function(const ModulusFunction &phi) {
  LemmaFunction L;
  L.Phi = [phi](double s) { return derivative(phi, s); };
  L.s_Phi_of_u = [phi](double u) {
    const auto p = phi.at_log(u);
    return p.phi * p.q;
  };
  return L;
}

namespace detail {

// int_0^x Phi(s) ds = int_{log(1/x)}^inf s Phi(s) du.
inline double lemma_primitive(const LemmaFunction &L, double x, double tol) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([&](double u) { return L.s_Phi_of_u(u); }, std::log(1.0 / x),
                     std::numeric_limits<double>::infinity(), tol);
}

// int_0^len Phi(sqrt(p^2 + c^2 d^2)) dd. The substitution d = len e^{-v}
// resolves the peak at d = 0; for p = 0 the log form is used directly.
inline double lemma_leg(const LemmaFunction &L, double p, double c, double len, double tol) {
  if (len <= 0.0)
    return 0.0;
  if (p == 0.0)
    return lemma_primitive(L, c * len, tol) / c;
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate(
      [&](double v) {
        const double d = len * std::exp(-v);
        return d > 0.0 ? d * L.Phi(std::hypot(p, c * d)) : 0.0;
      },
      0.0, std::numeric_limits<double>::infinity(), tol);
}

} // namespace detail

/// Checks int_0^1 Phi(|g a + (1-g) b|) dg <= (int_0^|a| Phi + int_0^|b| Phi) / (|a| + |b|),
/// and equality (to quad_tol, relative) when a is a negative multiple of b.
/// Segments passing within 1e-14 (|a|+|b|) of the origin are treated as
/// passing through it.
inline VerificationReport averaging_lemma_check(const LemmaFunction &L, const Eigen::VectorXd &a,
                                                const Eigen::VectorXd &b, double quad_tol = 1e-8) {
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0))
    throw std::invalid_argument("averaging_lemma_check: a and b must be non-zero");
  const Eigen::VectorXd dv = a - b;
  const double c = dv.norm();
  const double qtol = std::sqrt(std::numeric_limits<double>::epsilon()) * 1e-2;
  double lhs = 0.0;
  double gs = 0.0;
  double p = 0.0;
  if (c == 0.0) {
    lhs = L.Phi(na);
  } else {
    // b + g (a - b) is closest to the origin at g*.
    gs = std::clamp(-b.dot(dv) / (c * c), 0.0, 1.0);
    p = (b + gs * dv).norm();
    if (p <= 1e-14 * (na + nb))
      p = 0.0;
    lhs = detail::lemma_leg(L, p, c, gs, qtol) + detail::lemma_leg(L, p, c, 1.0 - gs, qtol);
  }
  const double rhs =
      (detail::lemma_primitive(L, na, qtol) + detail::lemma_primitive(L, nb, qtol)) / (na + nb);
  const double scale = std::max(1.0, std::abs(rhs));
  const bool antiparallel = p == 0.0 && c > 0.0 && gs > 0.0 && gs < 1.0;

  VerificationReport rep;
  rep.suite = "averaging-lemma";
  rep.add({"inequality", lhs <= rhs + quad_tol * scale, lhs / rhs, 1, quad_tol, std::nullopt,
           "lhs=" + format_double(lhs) + " rhs=" + format_double(rhs)});
  if (antiparallel)
    rep.add({"equality", std::abs(lhs - rhs) <= quad_tol * scale, std::abs(lhs - rhs) / scale, 1,
             quad_tol, std::nullopt, "a is a negative multiple of b"});
  return rep;
}

// ---------------------------------------------------------------------------
// Main theorem suite

/// Checks for the glued map: H(0) = 0 and H = id outside the double cone and
/// on the base; per radius, omega_H(0, r) = phi(r) = omega_F(0, r) with the
/// sup attained on the axis; the global moduli of H and F; and the axis
/// formulas H(0, t) = (0, phi(t)) / (0, -psi(-t)), F(0, y) = (0, psi(y)) / (0, -phi(-y)).
inline VerificationReport verify_main_theorem(const GluedMap &g, const std::vector<double> &radii,
                                              int count, std::uint64_t seed, int pairs = 20000) {
  const ConeMap &m = g.cone;
  const ModulusFunction &phi = m.phi;
  const int n = m.n;
  const double tol = 1e-12;
  VerificationReport rep;
  rep.suite = "main-theorem";
  const Deformation H = make_deformation(g, tol);
  const Deformation F = inverse_of(H);
  const ConePoint origin = ConePoint::axis(n, 0.0);

  {
    const auto h0 = H(origin);
    const auto f0 = F(origin);
    const double err = std::max(cone_norm(h0), cone_norm(f0));
    rep.add({"origin_fixed", err == 0.0, err, 1, 0.0, std::nullopt, "H(0) = F(0) = 0"});
  }
  {
    double err = 0.0;
    long long cnt = 0;
    for (double r : {1.0 + 1e-9, 1.25, 2.0, 3.0}) {
      for (const auto &X : sample_cone_sphere(n, r, NormKind::cone, HalfSpace::both, count / 4, seed)) {
        err = std::max({err, cone_distance(H(X), X), cone_distance(F(X), X)});
        ++cnt;
      }
    }
    rep.add({"identity_outside", err == 0.0, err, cnt, 0.0, seed, "H = F = id for ||X|| > 1"});
  }
  {
    double err = 0.0;
    long long cnt = 0;
    for (const auto &X : sample_cone_sphere(n, 1.0, NormKind::cone, HalfSpace::both, count, seed)) {
      err = std::max({err, cone_distance(H(X), X), cone_distance(F(X), X)});
      ++cnt;
    }
    rep.add({"identity_on_cone_boundary", err <= 1e-12, err, cnt, 1e-12, seed,
             "H = F = id on ||X|| = 1"});
  }
  {
    double err = 0.0;
    long long cnt = 0;
    auto pts = sample_cone_interior(n, count, seed);
    for (const auto &P : pts.points) {
      const ConePoint X(P.x, 0.0);
      err = std::max({err, cone_distance(H(X), X), cone_distance(F(X), X)});
      ++cnt;
    }
    rep.add({"identity_on_base", err == 0.0, err, cnt, 0.0, seed, "H = F = id on t = 0"});
  }

  double axis_err = 0.0;
  double excess = -std::numeric_limits<double>::infinity();
  double formula_err = 0.0;
  double euclid_lo = std::numeric_limits<double>::infinity();
  double euclid_hi = 0.0;
  for (double r : radii) {
    const double target = phi(r);
    const ConePoint up = ConePoint::axis(n, r);
    const ConePoint down = ConePoint::axis(n, -r);
    // Attained on the axis: H at (0, r), F at (0, -r).
    const double h_axis = cone_norm(H(up));
    const double f_axis = cone_norm(F(down));
    axis_err = std::max({axis_err, std::abs(h_axis - target), std::abs(f_axis - target)});
    const auto sph = sample_cone_sphere(n, r, NormKind::cone, HalfSpace::both, count, seed);
    for (std::size_t i = 2; i < sph.size(); ++i) {
      excess = std::max(excess, cone_norm(H(sph[i])) - h_axis);
      excess = std::max(excess, cone_norm(F(sph[i])) - f_axis);
    }
    const double psi = invert(phi, r, tol);
    formula_err = std::max({formula_err, std::abs(H(up).t - target), std::abs(H(down).t + psi),
                            std::abs(F(up).t - psi), std::abs(F(down).t + target),
                            H(up).x.norm(), F(up).x.norm(), H(down).x.norm(), F(down).x.norm()});
    // phi(psi(r)) = r is checkable only while psi(r) is a normal double.
    if (r > phi(std::numeric_limits<double>::min()))
      formula_err = std::max(formula_err, std::abs(phi(psi) - r));
    // Euclidean r-sphere: the axis gives phi(r), and it lies in the cone ball of radius sqrt2 r.
    double we_h = 0.0, we_f = 0.0;
    for (const auto &X : sample_cone_sphere(n, r, NormKind::euclid, HalfSpace::both, count, seed)) {
      we_h = std::max(we_h, euclid_norm(H(X)));
      we_f = std::max(we_f, euclid_norm(F(X)));
    }
    const double upper = phi(std::numbers::sqrt2 * r);
    for (double w : {we_h, we_f}) {
      euclid_lo = std::min(euclid_lo, w / target);
      euclid_hi = std::max(euclid_hi, w / upper);
    }
  }
  const auto nr = static_cast<long long>(radii.size());
  rep.add({"axis_modulus", axis_err <= 1e-12, axis_err, nr, 1e-12, std::nullopt,
           "|omega_H(0,r) - phi(r)| and |omega_F(0,r) - phi(r)| on the axis"});
  rep.add({"off_axis_below_axis", excess <= 1e-9, excess, nr * count, 1e-9, seed,
           "sampled sup over the cone sphere minus the axis value"});
  rep.add({"axis_formulas", formula_err <= 1e-12, formula_err, nr, 1e-12, std::nullopt,
           "H(0,t), F(0,y) against phi and psi on both half-axes"});
  rep.add({"euclid_sphere_modulus", euclid_lo >= 1.0 - 1e-12 && euclid_hi <= 1.0 + 1e-12,
           euclid_hi, nr * count, 1e-12, seed,
           "phi(r) <= omega(0,r) <= phi(sqrt2 r) over Euclidean spheres, min ratio " +
               format_double(euclid_lo)});

  for (auto c : verify_global_modulus_H(m, pairs, seed).checks)
    rep.add(std::move(c));
  for (auto c : verify_global_modulus_F(m, pairs, seed, tol).checks)
    rep.add(std::move(c));
  return rep;
}

} // namespace bicon
