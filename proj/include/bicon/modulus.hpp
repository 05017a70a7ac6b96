#pragma once

// Admissible moduli of continuity phi: [0, inf) -> [0, inf) with phi(s) = s
// for s >= 1, their calculus, condition checks and the energy functional
//   E[phi] = int_0^1 phi(s)^n ds / s.
//
// Built-in families are evaluated through the log-distance u = log(1/s), so
// that s far below the double range (s = e^{-1e6}, say) is still meaningful.

#include "bicon/numerics.hpp"
#include "bicon/report.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bicon {

struct Identity {};

struct Power {
  double eps = 1.0;
};

/// phi = prod_{j<k} (1 + a_j L_j)^{-1/n} * (1 + a_k L_k)^{-alpha}
struct IterLog {
  int depth = 1;
  double alpha = 1.0;
};

/// User supplied values on (0, 1); derivatives by finite differences.
struct Custom {
  std::function<double(double)> fn;
  std::string label = "custom";
};

/// phi and its log-derivative at one point, parametrised by u = log(1/s).
struct LogPoint {
  double u = 0.0;
  double s = 1.0;
  double phi = 1.0;
  double log_phi = 0.0;
  double q = 1.0;        ///< s phi'(s) / phi(s)
  double dq_du = 0.0;    ///< d q / d u
  double inv_lambda = 1.0; ///< s / phi(s)
};

namespace detail {

inline constexpr int kMaxDepth = 5;

// Exponential tower T_0 = 1, T_m = exp(T_{m-1}).
inline constexpr std::array<double, 4> kTower{1.0, std::numbers::e, 15.154262241479262,
                                              3814279.104760214};

inline double tower(int m) { return m < 0 ? 0.0 : kTower[static_cast<std::size_t>(m)]; }

struct ChainValue {
  double L = 0.0;
  double dL = 1.0;  // dL/du
  double d2L = 0.0; // d^2L/du^2
  double log_chain = 0.0; // sum of log g_m = -log dL
};

// L_1 = u, L_j = log^{(j-1)}(T_{j-2} + u). Evaluated downward with log1p so
// that small u keeps full relative accuracy.
inline ChainValue chain(int j, double u) {
  ChainValue c;
  if (j == 1) {
    c.L = u;
    return c;
  }
  std::array<double, kMaxDepth> delta{};
  delta[static_cast<std::size_t>(j - 1)] = u;
  for (int i = j - 1; i >= 1; --i)
    delta[static_cast<std::size_t>(i - 1)] =
        std::log1p(delta[static_cast<std::size_t>(i)] / tower(i - 1));
  c.L = delta[0];
  double gp = 1.0;
  double sum = 0.0;
  for (int m = 0; m <= j - 2; ++m) {
    const int i = j - 1 - m;
    const double g = tower(i - 1) + delta[static_cast<std::size_t>(i)];
    sum += gp / g;
    gp /= g;
    c.log_chain += std::log(g);
  }
  c.dL = gp;
  c.d2L = -gp * sum;
  return c;
}

} // namespace detail

class ModulusFunction {
public:
  using Family = std::variant<Identity, Power, IterLog, Custom>;

  static ModulusFunction identity(int n = 2) { return make(Identity{}, n); }

  static ModulusFunction power(double eps, int n = 2) {
    if (!(eps > 0.0 && eps <= 1.0))
      throw std::invalid_argument("power: eps must lie in (0, 1]");
    return make(Power{eps}, n);
  }

  /// alpha in (0, 1] is accepted; alpha <= 1/n builds a function that fails (C3).
  static ModulusFunction iterlog(int depth, double alpha, int n = 2) {
    if (depth < 1 || depth > detail::kMaxDepth)
      throw std::invalid_argument("iterlog: depth must lie in 1..5");
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw std::invalid_argument("iterlog: alpha must lie in (0, 1]");
    return make(IterLog{depth, alpha}, n);
  }

  static ModulusFunction custom(std::function<double(double)> fn, int n = 2,
                                std::string label = "custom") {
    if (!fn)
      throw std::invalid_argument("custom: empty function");
    return make(Custom{std::move(fn), std::move(label)}, n);
  }

  const Family &family() const { return family_; }
  int dimension() const { return n_; }
  const std::vector<double> &coefficients() const { return a_; }
  double M() const { return M_; }
  double concavity_radius() const { return r_; }
  bool is_custom() const { return std::holds_alternative<Custom>(family_); }

  ModulusFunction with_constants(double M, double r) const {
    ModulusFunction f = *this;
    f.M_ = M;
    f.r_ = r;
    return f;
  }

  /// Family spec string, e.g. "iterlog:k=2,alpha=1,n=2"; n is always present.
  std::string describe() const {
    return std::visit(
        [&](const auto &f) -> std::string {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Identity>)
            return "identity,n=" + std::to_string(n_);
          else if constexpr (std::is_same_v<T, Power>)
            return "power:eps=" + format_double(f.eps) + ",n=" + std::to_string(n_);
          else if constexpr (std::is_same_v<T, IterLog>)
            return "iterlog:k=" + std::to_string(f.depth) + ",alpha=" + format_double(f.alpha) +
                   ",n=" + std::to_string(n_);
          else
            return "custom:" + f.label;
        },
        family_);
  }

  double operator()(double s) const {
    if (!(s >= 0.0))
      throw std::invalid_argument("phi: argument must be >= 0");
    if (s == 0.0)
      return 0.0;
    if (s >= 1.0)
      return s;
    return std::visit(
        [&](const auto &f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Identity>)
            return s;
          else if constexpr (std::is_same_v<T, Power>)
            return std::pow(s, f.eps);
          else if constexpr (std::is_same_v<T, IterLog>)
            return std::exp(at_log(-std::log(s)).log_phi);
          else
            return f.fn(s);
        },
        family_);
  }

  /// phi, q and dq/du at u = log(1/s) in [0, inf]. Closed form for built-in
  /// families; finite differences in s for Custom (dq_du is NaN there).
  LogPoint at_log(double u) const {
    if (!(u >= 0.0))
      throw std::invalid_argument("at_log: u must be >= 0");
    LogPoint p;
    p.u = u;
    p.s = std::exp(-u);
    std::visit(
        [&](const auto &f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Identity>) {
            p.log_phi = -u;
            p.q = 1.0;
          } else if constexpr (std::is_same_v<T, Power>) {
            p.log_phi = -f.eps * u;
            p.q = f.eps;
          } else if constexpr (std::is_same_v<T, IterLog>) {
            iterlog_point(f, u, p);
          } else {
            custom_point(f, p);
          }
        },
        family_);
    p.phi = std::exp(p.log_phi);
    if (!std::holds_alternative<Custom>(family_))
      p.inv_lambda = std::isfinite(u) ? std::exp(-u - p.log_phi) : 0.0;
    return p;
  }

private:
  ModulusFunction(Family fam, int n) : family_(std::move(fam)), n_(n) {}

  static ModulusFunction make(Family fam, int n);

  void iterlog_point(const IterLog &f, double u, LogPoint &p) const {
    if (!std::isfinite(u)) {
      p.log_phi = -std::numeric_limits<double>::infinity();
      p.q = 0.0;
      p.dq_du = 0.0;
      return;
    }
    double log_phi = 0.0;
    double q = 0.0;
    double dq = 0.0;
    for (int j = 1; j <= f.depth; ++j) {
      const double beta = j < f.depth ? 1.0 / n_ : f.alpha;
      const double a = a_[static_cast<std::size_t>(j - 1)];
      const auto c = detail::chain(j, u);
      const double den = 1.0 + a * c.L;
      log_phi -= beta * std::log1p(a * c.L);
      q += beta * a * c.dL / den;
      dq += beta * a * (c.d2L * den - a * c.dL * c.dL) / (den * den);
    }
    p.log_phi = log_phi;
    p.q = q;
    p.dq_du = dq;
  }

  static void custom_point(const Custom &f, LogPoint &p);

  Family family_;
  int n_ = 2;
  std::vector<double> a_;
  double M_ = 1.0;
  double r_ = 1.0;
};

namespace detail {

inline double custom_value(const Custom &f, double s) {
  if (s <= 0.0)
    return 0.0;
  if (s >= 1.0)
    return s;
  return f.fn(s);
}

inline double fd_step(double s) { return std::max(1e-7, 1e-4 * s); }

// Central differences, one-sided where the stencil would leave (0, 1]
// (phi has a kink at s = 1).
template <class G> double fd_derivative(G &&g, double s) {
  const double h = fd_step(s);
  if (s + h > 1.0)
    return (g(s) - g(s - h)) / h;
  if (s <= h)
    return (g(s + h) - g(s)) / h;
  return (g(s + h) - g(s - h)) / (2.0 * h);
}

inline double custom_derivative(const Custom &f, double s) {
  return fd_derivative([&](double x) { return custom_value(f, x); }, s);
}

inline double custom_second_derivative(const Custom &f, double s) {
  return fd_derivative([&](double x) { return custom_derivative(f, x); }, s);
}

} // namespace detail

inline void ModulusFunction::custom_point(const Custom &f, LogPoint &p) {
  const double v = detail::custom_value(f, p.s);
  p.log_phi = std::log(v);
  p.q = p.s > 0.0 && v > 0.0 ? p.s * detail::custom_derivative(f, p.s) / v : 0.0;
  p.dq_du = std::numeric_limits<double>::quiet_NaN();
  p.inv_lambda = v > 0.0 ? p.s / v : 0.0;
}

// ---------------------------------------------------------------------------
// Calculus

inline double eval(const ModulusFunction &phi, double s) { return phi(s); }

inline double derivative(const ModulusFunction &phi, double s) {
  if (!(s > 0.0))
    throw std::invalid_argument("derivative: s must be > 0");
  if (s > 1.0)
    return 1.0;
  if (const auto *c = std::get_if<Custom>(&phi.family()))
    return detail::custom_derivative(*c, s);
  const auto p = phi.at_log(-std::log(s));
  return p.phi * p.q / s;
}

inline double second_derivative(const ModulusFunction &phi, double s) {
  if (!(s > 0.0 && s <= 1.0))
    throw std::invalid_argument("second_derivative: s must lie in (0, 1]");
  if (const auto *c = std::get_if<Custom>(&phi.family()))
    return detail::custom_second_derivative(*c, s);
  const auto p = phi.at_log(-std::log(s));
  return p.phi / (s * s) * (p.q * p.q - p.q - p.dq_du);
}

/// lambda(s) = phi(s)/s. Defined for all s > 0 (equal to 1 beyond s = 1).
inline double lambda(const ModulusFunction &phi, double s) {
  if (!(s > 0.0))
    throw std::invalid_argument("lambda: s must be > 0");
  if (s >= 1.0)
    return 1.0;
  if (phi.is_custom())
    return phi(s) / s;
  const double u = -std::log(s);
  return std::exp(phi.at_log(u).log_phi + u);
}

/// lambda'(s) = lambda(s) (q - 1) / s.
inline double lambda_derivative(const ModulusFunction &phi, double s) {
  if (!(s > 0.0))
    throw std::invalid_argument("lambda_derivative: s must be > 0");
  if (s > 1.0)
    return 0.0;
  if (phi.is_custom()) {
    const double v = phi(s);
    return (s * derivative(phi, s) - v) / (s * s);
  }
  const double u = -std::log(s);
  const auto p = phi.at_log(u);
  return std::exp(p.log_phi + u) * (p.q - 1.0) / s;
}

/// Elasticity q(s) = s phi'(s) / phi(s).
inline double elasticity(const ModulusFunction &phi, double s) {
  if (!(s > 0.0))
    throw std::invalid_argument("elasticity: s must be > 0");
  if (s > 1.0)
    return 1.0;
  return phi.at_log(-std::log(s)).q;
}

/// psi(v) = phi^{-1}(v) by bisection on [0, min(v, 1)]. When psi(v) lies
/// below the smallest positive double the best representable endpoint is
/// returned (possibly 0).
inline double invert(const ModulusFunction &phi, double v, double tol = 1e-12) {
  if (!(v >= 0.0))
    throw std::invalid_argument("invert: v must be >= 0");
  if (!(tol > 0.0))
    throw std::invalid_argument("invert: tol must be > 0");
  if (v == 0.0)
    return 0.0;
  if (v >= 1.0)
    return v;
  return solve_increasing([&](double s) { return phi(s); }, v, 0.0, v, tol).root;
}

// ---------------------------------------------------------------------------
// Energy functional

/// The measure phi(s)^n ds/s written in a coordinate xi in [0, inf) in which
/// its tail decays exactly exponentially:
///   power/identity  xi = u,                    weight = e^{-n eps xi}
///   iterlog         w = log(1 + a_k L_k),      weight = R(u) e^{-(n alpha - 1) w} / a_k
/// with R bounded (R = 1 for depth 1, 2). For depth >= 2 the map u -> w is
/// extremely flat near u = 0 (dL_k/du = 1 / (T_{k-2} T_{k-3} ...)), so xi
/// starts as log(1 + u) up to u = 1e30 and continues as w - w(1e30) + split.
/// Custom families use xi = u.
class PhiPowerMeasure {
public:
  struct Node {
    LogPoint point;
    double weight = 0.0; ///< phi^n du/dxi
  };

  PhiPowerMeasure(const ModulusFunction &phi, int n) : phi_(phi), n_(n) {
    if (n < 2)
      throw std::invalid_argument("energy: n must be >= 2");
    std::visit(
        [&](const auto &f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Identity>) {
            rho_ = n;
          } else if constexpr (std::is_same_v<T, Power>) {
            rho_ = n * f.eps;
          } else if constexpr (std::is_same_v<T, IterLog>) {
            depth_ = f.depth;
            ak_ = phi.coefficients().back();
            rho_ = n * f.alpha - 1.0;
            // R grows like a power of log(1/s) when n is below phi's own n.
            if (f.depth >= 2 && n < phi.dimension())
              rho_ = -std::numeric_limits<double>::infinity();
            if (f.depth >= 2) {
              split_ = std::log1p(1e30);
              w0_ = std::log1p(ak_ * detail::chain(f.depth, 1e30).L);
            }
          } else {
            analytic_ = false;
          }
        },
        phi.family());
  }

  bool analytic() const { return analytic_; }
  double decay_rate() const { return rho_; }
  bool convergent() const { return !analytic_ || rho_ > 0.0; }
  /// End of the log(1 + u) segment (0 when there is none).
  double split() const { return split_; }

  Node at(double xi) const {
    Node nd;
    if (depth_ == 0) {
      nd.point = phi_.at_log(xi);
      nd.weight = analytic_ ? std::exp(-rho_ * xi) : std::pow(nd.point.phi, n_);
      return nd;
    }
    if (xi < split_) {
      nd.point = phi_.at_log(std::expm1(xi));
      nd.weight = std::exp(n_ * nd.point.log_phi + xi);
      return nd;
    }
    const double w = natural(xi);
    const double z = std::expm1(w) / ak_;
    const auto [u, log_r] = iterlog_u_and_log_r(z);
    nd.point = phi_.at_log(u);
    nd.weight = std::exp(log_r - rho_ * w) / ak_;
    return nd;
  }

  /// Upper bound for the integral of weight * b over [Xi, inf) when
  /// 0 <= b <= b_max and Xi >= split().
  double tail_bound(double Xi, double b_max = 1.0) const {
    if (!analytic_ || !(rho_ > 0.0))
      return std::numeric_limits<double>::infinity();
    const double W = natural(Xi);
    double r_sup = 1.0;
    if (depth_ >= 2) {
      r_sup = 0.0;
      for (double f : {1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0, 64.0}) {
        const double z = std::expm1(W * f) / ak_;
        r_sup = std::max(r_sup, std::exp(iterlog_u_and_log_r(z).second));
      }
      r_sup = std::max(r_sup, r_limit());
    }
    const double scale = depth_ == 0 ? 1.0 : ak_;
    return b_max * r_sup * std::exp(-rho_ * W) / (scale * rho_);
  }

private:
  double natural(double xi) const { return depth_ >= 2 ? xi - split_ + w0_ : xi; }

  // Limit of R as u -> inf.
  double r_limit() const {
    if (n_ > phi_.dimension())
      return 0.0;
    double r = 1.0;
    for (int j = 0; j + 1 < depth_; ++j)
      r /= phi_.coefficients()[static_cast<std::size_t>(j)];
    return r;
  }

  // u(z) with z = L_k, and log R. Where u overflows, L_j (j < k) is replaced
  // by the matching level V_{k-j} = log^{(j-1)}(T_{k-2} + u) of the L_k chain,
  // which differs from it by O(T_{k-2}/u).
  std::pair<double, double> iterlog_u_and_log_r(double z) const {
    const int k = depth_;
    const double nb = static_cast<double>(n_) / phi_.dimension();
    std::array<double, detail::kMaxDepth> delta{};
    delta[0] = z;
    for (int i = 1; i < k; ++i)
      delta[static_cast<std::size_t>(i)] =
          detail::tower(i - 1) * std::expm1(delta[static_cast<std::size_t>(i - 1)]);
    const double u = delta[static_cast<std::size_t>(k - 1)];
    const auto &a = phi_.coefficients();
    if (std::isfinite(u)) {
      double log_r = detail::chain(k, u).log_chain;
      for (int j = 1; j < k; ++j)
        log_r -= nb * std::log1p(a[static_cast<std::size_t>(j - 1)] * detail::chain(j, u).L);
      return {u, log_r};
    }
    // V_i = T_{i-1} + delta_i, and log V_i = V_{i-1}.
    auto V = [&](int i) { return detail::tower(i - 1) + delta[static_cast<std::size_t>(i)]; };
    double log_r = 0.0;
    for (int j = 1; j < k; ++j) {
      const int i = k - j;
      const double aj = a[static_cast<std::size_t>(j - 1)];
      const double v = V(i);
      if (v < 1e15) {
        log_r += std::log(v) - nb * std::log1p(aj * v);
      } else if (n_ == phi_.dimension()) {
        log_r += -std::log(aj);
      } else {
        const double lv = V(i - 1);
        log_r += (1.0 - nb) * lv - nb * std::log(aj);
      }
    }
    return {std::numeric_limits<double>::infinity(), log_r};
  }

  const ModulusFunction &phi_;
  int n_;
  int depth_ = 0;
  double ak_ = 1.0;
  double rho_ = 0.0;
  double split_ = 0.0;
  double w0_ = 0.0;
  bool analytic_ = true;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long nodes = 0;
  double cutoff = 0.0; ///< truncation point in the natural coordinate
  bool converged = false;
  std::string detail;
};

/// Integrates f(w) * weight(w) over [0, inf) with the panel count doubled until
/// successive estimates agree to tol/4 and the cutoff W chosen so that
/// tail_bound(W, b_max) <= tol/2. f must satisfy 0 <= f <= b_max. Tolerances
/// are absolute below 1 and relative above.
template <class F>
QuadratureResult integrate_phi_measure(const PhiPowerMeasure &mu, F &&f, double b_max, double tol,
                                       int max_panels = 1 << 14) {
  QuadratureResult res;
  if (!mu.convergent()) {
    res.value = std::numeric_limits<double>::infinity();
    res.error_estimate = std::numeric_limits<double>::infinity();
    res.detail = "divergent: measure decays with rate " + format_double(mu.decay_rate());
    return res;
  }
  auto integrand = [&](double w) {
    const auto nd = mu.at(w);
    return nd.weight == 0.0 ? 0.0 : nd.weight * f(nd);
  };
  auto refine = [&](double a, double b, int start_panels, long long &nodes, bool &ok) {
    int panels = start_panels;
    double prev = composite_gauss(integrand, a, b, panels);
    nodes += 20LL * panels;
    ok = false;
    double cur = prev;
    while (panels < max_panels) {
      panels *= 2;
      cur = composite_gauss(integrand, a, b, panels);
      nodes += 20LL * panels;
      if (std::abs(cur - prev) <= 0.25 * tol * std::max(1.0, std::abs(cur))) {
        ok = true;
        break;
      }
      prev = cur;
    }
    return std::pair{cur, std::abs(cur - prev)};
  };

  if (mu.analytic()) {
    const double a = mu.split();
    double head = 0.0;
    double head_err = 0.0;
    bool head_ok = true;
    if (a > 0.0) {
      const auto [v, d] = refine(0.0, a, 64, res.nodes, head_ok);
      head = v;
      head_err = d;
    }
    double W = a + 8.0 / mu.decay_rate();
    while (mu.tail_bound(W, b_max) > 0.5 * tol && W < 1e5)
      W = a + 1.5 * (W - a);
    const double tail = mu.tail_bound(W, b_max);
    bool ok = false;
    const auto [v, diff] =
        refine(a, W, std::max(4, static_cast<int>(std::ceil(W - a))), res.nodes, ok);
    res.value = head + v;
    res.cutoff = W;
    res.error_estimate = head_err + diff + tail;
    res.converged = head_ok && ok && tail <= 0.5 * tol;
    res.detail = res.converged ? "ok" : "refinement did not converge";
    return res;
  }

  // Custom families: no analytic tail, so extend the range in doublings until
  // the last increment is below tol/2.
  double W = 8.0;
  bool ok = false;
  auto [total, diff] = refine(0.0, W, 16, res.nodes, ok);
  double err = diff;
  double increment = std::numeric_limits<double>::infinity();
  while (W < 745.0) {
    bool ok2 = false;
    const auto [inc, d2] = refine(W, 2.0 * W, 16, res.nodes, ok2);
    total += inc;
    err += d2;
    ok = ok && ok2;
    increment = inc;
    W *= 2.0;
    if (std::abs(inc) <= 0.5 * tol)
      break;
  }
  res.value = total;
  res.cutoff = W;
  res.error_estimate = err + std::abs(increment);
  res.converged = ok && std::abs(increment) <= 0.5 * tol;
  res.detail = res.converged ? "ok (heuristic tail)" : "range extension did not converge";
  return res;
}

/// E[phi] = int_0^1 phi(s)^n ds/s.
inline QuadratureResult energy_functional(const ModulusFunction &phi, int n, double tol = 1e-10) {
  if (!(tol > 0.0))
    throw std::invalid_argument("energy_functional: tol must be > 0");
  PhiPowerMeasure mu(phi, n);
  return integrate_phi_measure(mu, [](const PhiPowerMeasure::Node &) { return 1.0; }, 1.0, tol);
}

// ---------------------------------------------------------------------------
// Constants and condition checks

namespace detail {

// phi(s) / (s phi'(s)^2) = (s/phi) / q^2; the (C2) constant is its sup.
inline double c2_ratio(const ModulusFunction &phi, double s) {
  const auto p = phi.at_log(-std::log(s));
  return p.q > 0.0 ? p.inv_lambda / (p.q * p.q) : std::numeric_limits<double>::infinity();
}

// Sign of phi'' scaled by s^2/phi: q^2 - q - dq/du (finite differences for Custom).
inline double concavity_indicator(const ModulusFunction &phi, double s) {
  if (phi.is_custom())
    return second_derivative(phi, s) * s * s / phi(s);
  const auto p = phi.at_log(-std::log(s));
  return p.q * p.q - p.q - p.dq_du;
}

// Finite differences lose all accuracy once s approaches the step 1e-7, so
// Custom families are only checked down to s = 1e-4.
inline std::vector<double> condition_grid(const ModulusFunction &phi, int count) {
  return unit_interval_grid(count, phi.is_custom() ? 9.2 : 690.0);
}

inline double measure_M(const ModulusFunction &phi, const std::vector<double> &grid) {
  return grid_sup([&](double s) { return c2_ratio(phi, s); }, grid).value;
}

inline double measure_r(const ModulusFunction &phi, const std::vector<double> &grid,
                        double tol = 1e-12) {
  double r = 0.0;
  for (double s : grid) {
    if (concavity_indicator(phi, s) > tol)
      break;
    r = s;
  }
  return r;
}

} // namespace detail

inline ModulusFunction ModulusFunction::make(Family fam, int n) {
  if (n < 2)
    throw std::invalid_argument("modulus: dimension n must be >= 2");
  ModulusFunction f(std::move(fam), n);
  if (const auto *il = std::get_if<IterLog>(&f.family_)) {
    for (int j = 1; j <= il->depth; ++j)
      f.a_.push_back(std::pow(1.0 - 1.0 / n, j - 1));
  }
  if (!std::holds_alternative<Identity>(f.family_)) {
    const auto grid = detail::condition_grid(f, 2048);
    f.M_ = detail::measure_M(f, grid);
    f.r_ = detail::measure_r(f, grid);
  }
  return f;
}

/// Verifies (C1)-(C4) on a grid of (0, 1] and reports the measured M and r.
inline VerificationReport check_conditions(const ModulusFunction &phi, int grid_size) {
  if (grid_size < 16)
    throw std::invalid_argument("check_conditions: grid_size must be >= 16");
  VerificationReport rep;
  rep.suite = "conditions";
  const auto grid = detail::condition_grid(phi, grid_size);
  const auto gsize = static_cast<long long>(grid.size());

  {
    CheckResult c{"C1", true, 0.0, gsize, 1e-14, std::nullopt, ""};
    const double at1 = phi(1.0);
    c.measured_constant = at1;
    if (phi(0.0) != 0.0 || std::abs(at1 - 1.0) > c.tolerance) {
      c.pass = false;
      c.detail = "endpoint values wrong";
    }
    for (double s : {1.5, 2.0, 10.0})
      if (phi(s) != s) {
        c.pass = false;
        c.detail = "phi(s) != s beyond 1";
      }
    double prev = 0.0;
    for (double s : grid) {
      const double v = phi(s);
      if (!(v > prev) && !(v == 0.0 && prev == 0.0)) {
        c.pass = false;
        c.detail = "not strictly increasing at s=" + format_double(s);
        break;
      }
      prev = v;
    }
    if (c.pass)
      c.detail = "phi(0)=0, phi(1)=1, phi(s)=s for s>=1, strictly increasing";
    rep.add(c);
  }

  {
    double q_max = 0.0;
    double lam_min = std::numeric_limits<double>::infinity();
    double lam_prev = std::numeric_limits<double>::infinity();
    bool lam_monotone = true;
    for (double s : grid) {
      const auto p = phi.at_log(-std::log(s));
      q_max = std::max(q_max, p.q);
      const double lam = p.inv_lambda > 0.0 ? 1.0 / p.inv_lambda
                                            : std::numeric_limits<double>::infinity();
      lam_min = std::min(lam_min, lam);
      if (lam > lam_prev * (1.0 + 1e-12))
        lam_monotone = false;
      lam_prev = lam;
    }
    const double M = detail::measure_M(phi, grid);
    const bool lower = q_max <= 1.0 + 1e-12;
    CheckResult c{"C2", lower && std::isfinite(M), M, gsize, 1e-12, std::nullopt, ""};
    c.detail = "max s*phi'/phi=" + format_double(q_max) + "; M = sup phi/(s phi'^2)";
    rep.add(c);
    rep.add({"lambda", lam_monotone && lam_min >= 1.0 - 1e-12, lam_min, gsize, 1e-12,
             std::nullopt, "lambda = phi/s non-increasing and >= 1; constant is min lambda"});
  }

  {
    const auto e = energy_functional(phi, phi.dimension(), 1e-10);
    CheckResult c{"C3", e.converged && std::isfinite(e.value), e.value, e.nodes, 1e-10,
                  std::nullopt, e.detail};
    rep.add(c);
  }

  {
    const double r = detail::measure_r(phi, grid);
    rep.add({"C4", r > 0.0, r, gsize, 1e-12, std::nullopt,
             "largest grid point r with phi'' <= 0 on (0, r]"});
  }
  return rep;
}

/// Copy of phi carrying the M and r measured on a grid of the given size.
inline ModulusFunction calibrate(const ModulusFunction &phi, int grid_size = 4096) {
  const auto grid = detail::condition_grid(phi, grid_size);
  return phi.with_constants(detail::measure_M(phi, grid), detail::measure_r(phi, grid));
}

/// sup over t in (0, 1/factor] of phi(factor t) / phi(t).
inline double doubling_constant(const ModulusFunction &phi, double factor, int grid_size = 2048) {
  if (!(factor >= 1.0))
    throw std::invalid_argument("doubling_constant: factor must be >= 1");
  auto grid = unit_interval_grid(std::max(grid_size, 2), 600.0);
  for (double &t : grid)
    t /= factor;
  return grid_sup([&](double t) { return phi(factor * t) / phi(t); }, grid).value;
}

struct QuasiInverseDefect {
  double m = 0.0;  ///< inf psi(phi(t)) / t
  double Mq = 0.0; ///< sup psi(phi(t)) / t
};

/// (inf, sup) of psi(phi(t))/t over a log grid of [t_min, 1].
template <class Phi, class Psi>
QuasiInverseDefect quasi_inverse_defect(const Phi &phi, const Psi &psi, int grid_size,
                                        double t_min = 1e-12) {
  const auto grid = log_grid(t_min, 1.0, grid_size);
  QuasiInverseDefect d{std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity()};
  for (double t : grid) {
    const double r = psi(phi(t)) / t;
    d.m = std::min(d.m, r);
    d.Mq = std::max(d.Mq, r);
  }
  return d;
}

} // namespace bicon
