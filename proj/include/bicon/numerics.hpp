#pragma once

// Scalar numerics shared by every module: monotone root bracketing,
// grid suprema, composite Gauss-Legendre quadrature, log-spaced grids and
// a platform-independent uniform deviate.

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bicon {

/// Thrown when a root solver is handed an interval that does not straddle the target.
class BracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0; ///< |f(root) - target|
  int iterations = 0;
};

/// Bisection for a non-decreasing f on [lo, hi] with f(lo) <= target <= f(hi).
///
/// When the bracket reaches down to zero the midpoint is taken in log space
/// (first by repeated squaring of the ratio, then geometric means) until the
/// bracket is within a factor of four, then arithmetically. Roots that sit
/// hundreds of decades below hi (e.g. the inverse of an iterated-log modulus)
/// are found in a few dozen steps this way. The loop stops at residual <= tol,
/// when the bracket can no longer be split in double precision, or after
/// max_iter evaluations; the endpoint with the smaller residual is returned.
template <class F>
RootResult solve_increasing(F &&f, double target, double lo, double hi, double tol,
                            int max_iter = 200) {
  if (!(tol > 0.0))
    throw std::invalid_argument("solve_increasing: tol must be positive");
  if (!(lo <= hi))
    throw std::invalid_argument("solve_increasing: lo > hi");

  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi))
    throw BracketError("solve_increasing: non-finite value at bracket end");
  if (std::abs(flo - target) <= tol)
    return {lo, std::abs(flo - target), 0};
  if (std::abs(fhi - target) <= tol)
    return {hi, std::abs(fhi - target), 0};
  if (flo > target || fhi < target)
    throw BracketError("solve_increasing: bracket [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "] does not straddle target " +
                       std::to_string(target));

  int it = 0;
  auto best = [&]() -> RootResult {
    const double rlo = std::abs(flo - target);
    const double rhi = std::abs(fhi - target);
    return rlo <= rhi ? RootResult{lo, rlo, it} : RootResult{hi, rhi, it};
  };

  // Geometric descent from hi toward zero: probe hi * 2^-m with m doubling.
  if (lo == 0.0 && hi > 0.0) {
    for (int m = 1; m <= 2048 && it < max_iter; m *= 2) {
      const double p = std::ldexp(hi, -m);
      if (p == 0.0)
        break;
      const double fp = f(p);
      ++it;
      if (std::abs(fp - target) <= tol)
        return {p, std::abs(fp - target), it};
      if (fp < target) {
        lo = p;
        flo = fp;
        break;
      }
      hi = p;
      fhi = fp;
    }
  }

  while (it < max_iter) {
    const double mid = (lo > 0.0 && hi > 4.0 * lo) ? std::sqrt(lo) * std::sqrt(hi)
                                                   : lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi))
      break;
    const double fm = f(mid);
    ++it;
    if (std::abs(fm - target) <= tol)
      return {mid, std::abs(fm - target), it};
    if (fm < target) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return best();
}

/// count points from lo to hi (both included), equally spaced in log.
inline std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1)
    throw std::invalid_argument("log_grid: need 0 < lo <= hi and count >= 1");
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = hi;
    return g;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

/// Grid for (0, 1] that is dense near 1 and reaches s = 1e-300: the
/// log-distance u = log(1/s) is spaced uniformly in log(1 + u).
inline std::vector<double> unit_interval_grid(int count, double u_max = 690.0) {
  if (count < 2)
    throw std::invalid_argument("unit_interval_grid: count >= 2");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double vmax = std::log1p(u_max);
  for (int i = 0; i < count; ++i) {
    const double v = vmax * (count - 1 - i) / (count - 1);
    g[static_cast<std::size_t>(i)] = std::exp(-std::expm1(v));
  }
  g.back() = 1.0;
  return g;
}

struct SupResult {
  double value = -std::numeric_limits<double>::infinity();
  double argmax = 0.0;
};

/// Maximum of f over an ascending positive grid, optionally polished by a
/// golden-section search (in log coordinates) between the neighbours of the
/// best grid point. The returned value is the largest f actually evaluated,
/// so refinement can only raise the estimate.
template <class F>
SupResult grid_sup(F &&f, std::span<const double> grid, bool refine = true) {
  SupResult best;
  std::size_t ibest = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best.value) {
      best = {v, grid[i]};
      ibest = i;
    }
  }
  if (!refine || grid.size() < 3)
    return best;

  double a = std::log(grid[ibest == 0 ? 0 : ibest - 1]);
  double b = std::log(grid[std::min(ibest + 1, grid.size() - 1)]);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  auto eval = [&](double lx) {
    const double x = std::exp(lx);
    const double v = f(x);
    if (v > best.value)
      best = {v, x};
    return v;
  };
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int k = 0; k < 80 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++k) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  return best;
}

/// Composite 20-point Gauss-Legendre rule with equal panels on [a, b].
template <class F> double composite_gauss(F &&f, double a, double b, int panels) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + h * p;
    const double hi = (p + 1 == panels) ? b : lo + h;
    sum += rule::integrate(f, lo, hi);
  }
  return sum;
}

/// Shortest round-trip decimal form of a double (locale independent).
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Uniform deviate in [0, 1) from the top 53 bits of a 64-bit engine.
/// Unlike std::uniform_real_distribution this is identical on every platform.
inline double uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace bicon
