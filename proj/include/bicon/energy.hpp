#pragma once

// Conformal energy of the cone map, the inner-distortion integral and a
// Monte Carlo estimate of the energy of its inverse.
//
// All quadratures use the axial symmetry of H: with s = t + |x| and
// theta = t / s, the volume element of C+ is
//   dX = sigma_{n-2} s^{n-1} (1 - theta)^{n-2} ds dtheta
// and the integrands depend on (s, theta) only.

#include "bicon/deformations.hpp"
#include "bicon/geometry.hpp"
#include "bicon/modulus.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace bicon {

enum class EnergyMethod { tensor_quadrature, monte_carlo };

inline const char *to_string(EnergyMethod m) {
  return m == EnergyMethod::tensor_quadrature ? "tensor_quadrature" : "monte_carlo";
}

struct EnergyResult {
  double value = 0.0;
  EnergyMethod method = EnergyMethod::tensor_quadrature;
  long long samples_or_nodes = 0;
  double error_estimate = 0.0;
  std::optional<std::uint64_t> seed;
  bool converged = true;
  std::string detail;
};

namespace detail {

using Gauss20 = boost::math::quadrature::gauss<double, 20>;

// int_0^1 (1 - theta)^{n-2} b(theta) dtheta with
//   b = [(n-1)/lambda^2 + theta^2 (q-1)^2 + (1 + theta (q-1))^2]^{n/2},
// so that |DH|^n = lambda^n b.
inline double theta_integral_dh(int n, double q, double inv_lambda, int panels) {
  const double a = (n - 1) * inv_lambda * inv_lambda;
  const double d = q - 1.0;
  auto f = [&](double th) {
    const double c = 1.0 + th * d;
    const double b = std::pow(a + th * th * d * d + c * c, 0.5 * n);
    return n == 2 ? b : std::pow(1.0 - th, n - 2) * b;
  };
  return composite_gauss(f, 0.0, 1.0, panels);
}

// int_0^1 (1 - theta)^{n-2} c [n - 1 + 1/(lambda c)^2 + theta^2 (1-q)^2 / c^2]^{n/2} dtheta,
// c = 1 + theta (q - 1), so that K_H = lambda times the bracketed integrand.
// For small q the integrand behaves like c^{1-n} near theta = 1; the
// substitution v = log c spreads that peak over [log q, 0].
inline double theta_integral_k(int n, double q, double inv_lambda, int panels) {
  const double d = 1.0 - q;
  auto g = [&](double th, double c) {
    const double e = inv_lambda / c;
    const double k = c * std::pow((n - 1) + e * e + th * th * d * d / (c * c), 0.5 * n);
    return n == 2 ? k : std::pow(std::max(0.0, 1.0 - th), n - 2) * k;
  };
  if (q > 0.5)
    return composite_gauss([&](double th) { return g(th, 1.0 - th * d); }, 0.0, 1.0, panels);
  const double vmin = std::log(q);
  return composite_gauss(
      [&](double v) {
        const double c = std::exp(v);
        const double th = (1.0 - c) / d;
        return g(th, c) * c / d;
      },
      vmin, 0.0, panels);
}

} // namespace detail

/// int_{C+} |DH|^n, reduced to int phi^n ds/s int (1-theta)^{n-2} b dtheta.
inline EnergyResult conformal_energy_H(const ConeMap &m, double tol = 1e-6) {
  const int n = m.n;
  const double sigma = sphere_measure(n - 2);
  PhiPowerMeasure mu(m.phi, n);
  const double b_max = std::pow(n + 1.0, 0.5 * n);
  const auto q = integrate_phi_measure(
      mu,
      [&](const PhiPowerMeasure::Node &nd) {
        return detail::theta_integral_dh(n, nd.point.q, nd.point.inv_lambda, 2);
      },
      b_max, tol / sigma);
  EnergyResult r;
  r.value = sigma * q.value;
  r.error_estimate = sigma * q.error_estimate;
  r.samples_or_nodes = q.nodes * 40;
  r.converged = q.converged;
  r.detail = q.detail;
  return r;
}

/// int_{C+} K_H with K_H = |(DH)^{-1}|^n J_H, integrated in u = log(1/s):
///   sigma int s^{n-1} phi(s) du int (1-theta)^{n-2} c [...]^{n/2} dtheta.
/// The u-range [0, U] is cut where e^{-(n-1)U} times the integrand bound is
/// below tol; panels are doubled until successive values agree to tol.
inline EnergyResult inner_distortion_integral(const ConeMap &m, double tol = 1e-6) {
  const int n = m.n;
  const double sigma = sphere_measure(n - 2);
  const double U = (std::log(1.0 / tol) + 12.0) / (n - 1) + 8.0;
  long long nodes = 0;
  auto estimate = [&](int panels) {
    const int inner = std::max(4, panels / 4);
    nodes += 20LL * panels * 20LL * inner;
    return composite_gauss(
        [&](double u) {
          const auto p = m.phi.at_log(u);
          const double w = std::exp(-(n - 1) * u + p.log_phi);
          if (w == 0.0)
            return 0.0;
          return w * detail::theta_integral_k(n, std::max(p.q, 1e-300), p.inv_lambda, inner);
        },
        0.0, U, panels);
  };
  int panels = 16;
  double prev = estimate(panels);
  double cur = prev;
  bool ok = false;
  while (panels < 4096) {
    panels *= 2;
    cur = estimate(panels);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur)) / sigma) {
      ok = true;
      break;
    }
    prev = cur;
  }
  EnergyResult r;
  r.value = sigma * cur;
  r.error_estimate = sigma * std::abs(cur - prev);
  r.samples_or_nodes = nodes;
  r.converged = ok;
  r.detail = ok ? "ok" : "refinement did not converge";
  return r;
}

/// int_{C+} |DF|^n by Monte Carlo: Y uniform in C+ (minus 1e-6 margins at the
/// axis and boundary), |DF(Y)| = |(DH(F(Y)))^{-1}|. The error estimate is the
/// standard error plus the excluded volume times the largest sampled value.
inline EnergyResult energy_F_monte_carlo(const ConeMap &m, long long samples, std::uint64_t seed,
                                         double margin = 1e-6) {
  if (samples < 1000)
    throw std::invalid_argument("energy_F_monte_carlo: samples must be >= 1000");
  const int n = m.n;
  const auto pts = sample_cone_interior(n, static_cast<int>(samples), seed, margin, margin);
  double sum = 0.0;
  double sum2 = 0.0;
  double vmax = 0.0;
  for (const auto &Y : pts.points) {
    const auto X = cone_map_inverse(m, Y, 1e-12);
    const auto J = cone_map_jacobian(m, X);
    const double v = std::pow(J.inv_hs_norm, n);
    sum += v;
    sum2 += v * v;
    vmax = std::max(vmax, v);
  }
  const double N = static_cast<double>(pts.points.size());
  const double mean = sum / N;
  const double var = std::max(0.0, sum2 / N - mean * mean) * N / (N - 1.0);
  const double vol = upper_cone_volume(n);
  const double omega = ball_volume(n - 1);
  const double lateral = std::numbers::sqrt2 * sphere_measure(n - 2) / (n - 1);
  const double excluded = omega * std::pow(margin, n - 1) + (omega + lateral) * margin;

  EnergyResult r;
  r.method = EnergyMethod::monte_carlo;
  r.value = mean * vol;
  r.samples_or_nodes = samples;
  r.error_estimate = vol * std::sqrt(var / N) + excluded * vmax;
  r.seed = seed;
  r.detail = "acceptance_rate=" + format_double(pts.acceptance_rate);
  return r;
}

struct BiconformalEnergy {
  EnergyResult total;    ///< E[H] + E[F] over the double cone
  double energy_H = 0.0; ///< int_C |DH|^n
  double energy_F = 0.0; ///< int_C |DF|^n
  EnergyResult upper_H;  ///< int_{C+} |DH|^n
  EnergyResult upper_K;  ///< int_{C+} K_H = int_{C+} |DF|^n
};

/// On C- the glued H is r F r and F is r H r, so each energy is the sum of
/// the two upper-cone integrals and E[H] = E[F] by construction.
inline BiconformalEnergy biconformal_energy(const GluedMap &g, double tol = 1e-6) {
  BiconformalEnergy b;
  b.upper_H = conformal_energy_H(g.cone, tol);
  b.upper_K = inner_distortion_integral(g.cone, tol);
  b.energy_H = b.upper_H.value + b.upper_K.value;
  b.energy_F = b.upper_K.value + b.upper_H.value;
  b.total.value = b.energy_H + b.energy_F;
  b.total.error_estimate = 2.0 * (b.upper_H.error_estimate + b.upper_K.error_estimate);
  b.total.samples_or_nodes = b.upper_H.samples_or_nodes + b.upper_K.samples_or_nodes;
  b.total.converged = b.upper_H.converged && b.upper_K.converged;
  b.total.detail = b.total.converged ? "ok" : "upper-cone quadrature did not converge";
  return b;
}

} // namespace bicon
