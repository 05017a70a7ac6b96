#pragma once

// Spec strings used on the command line.
//
//   family  identity[,n=N] | power:eps=E[,n=N] | iterlog:k=K,alpha=A[,n=N]
//   map     cone:phi=<family>[,n=N] | glued:phi=<family>[,n=N]
//           | radial:power:eps=E[,n=N] | radial:logexample:beta=B[,n=N]
//           | identity[,n=N]
//   radii   log:a..b[:N] | r1,r2,...
//   center  0 | c1,c2,...,cn
//
// In a map spec the first n= applies to the family and the map; a second
// n= overrides the map's dimension only.

#include "bicon/deformations.hpp"
#include "bicon/geometry.hpp"
#include "bicon/modulus.hpp"
#include "bicon/numerics.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bicon {

/// Malformed command-line input.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

inline double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto *end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end)
    throw UsageError("invalid number '" + std::string(s) + "' for " + std::string(what));
  return v;
}

inline int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto *end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end)
    throw UsageError("invalid integer '" + std::string(s) + "' for " + std::string(what));
  return v;
}

struct KeyValues {
  std::map<std::string, std::string> values;
  std::vector<std::string> dims; // every n=, in order
};

inline KeyValues parse_kv(std::string_view body, std::string_view ctx) {
  KeyValues kv;
  if (body.empty())
    return kv;
  for (const auto &item : split(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("expected key=value in " + std::string(ctx) + ", got '" + item + "'");
    const auto key = item.substr(0, eq);
    const auto val = item.substr(eq + 1);
    if (key == "n") {
      kv.dims.push_back(val);
      continue;
    }
    if (!kv.values.emplace(key, val).second)
      throw UsageError("duplicate key '" + key + "' in " + std::string(ctx));
  }
  return kv;
}

inline void allow_keys(const KeyValues &kv, std::initializer_list<const char *> keys,
                       std::string_view ctx) {
  for (const auto &[k, v] : kv.values) {
    bool ok = false;
    for (const char *a : keys)
      ok = ok || k == a;
    if (!ok)
      throw UsageError("unknown key '" + k + "' in " + std::string(ctx));
  }
}

inline std::string require(const KeyValues &kv, const std::string &key, std::string_view ctx) {
  const auto it = kv.values.find(key);
  if (it == kv.values.end())
    throw UsageError("missing key '" + key + "' in " + std::string(ctx));
  return it->second;
}

inline int dimension_of(const std::string &v) {
  const int n = parse_int(v, "n");
  if (n < 2)
    throw UsageError("n must be >= 2, got " + v);
  return n;
}

// name[:k=v,...] with the family name split off.
inline std::pair<std::string, std::string> head_tail(std::string_view s) {
  const auto pos = s.find_first_of(":,");
  if (pos == std::string_view::npos)
    return {std::string(s), ""};
  return {std::string(s.substr(0, pos)), std::string(s.substr(pos + 1))};
}

inline ModulusFunction build_family(const std::string &name, const KeyValues &kv, int n,
                                    std::string_view spec) {
  try {
    if (name == "identity") {
      allow_keys(kv, {}, spec);
      return ModulusFunction::identity(n);
    }
    if (name == "power") {
      allow_keys(kv, {"eps"}, spec);
      return ModulusFunction::power(parse_real(require(kv, "eps", spec), "eps"), n);
    }
    if (name == "iterlog") {
      allow_keys(kv, {"k", "alpha"}, spec);
      const int k = parse_int(require(kv, "k", spec), "k");
      const auto it = kv.values.find("alpha");
      const double alpha = it == kv.values.end() ? 1.0 : parse_real(it->second, "alpha");
      return ModulusFunction::iterlog(k, alpha, n);
    }
  } catch (const UsageError &) {
    throw;
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string(spec) + ": " + e.what());
  }
  throw UsageError("unknown family '" + name + "' in '" + std::string(spec) + "'");
}

} // namespace detail

/// Parses a family spec; n defaults to default_n when absent.
inline ModulusFunction parse_family(std::string_view spec, int default_n = 2) {
  const auto [name, rest] = detail::head_tail(spec);
  const auto kv = detail::parse_kv(rest, spec);
  if (kv.dims.size() > 1)
    throw UsageError("repeated n= in family spec '" + std::string(spec) + "'");
  const int n = kv.dims.empty() ? default_n : detail::dimension_of(kv.dims.front());
  return detail::build_family(name, kv, n, spec);
}

struct IdentityMap {
  int n = 2;
};

using MapSpec = std::variant<IdentityMap, ConeMap, GluedMap, RadialMap>;

inline int map_dimension(const MapSpec &m) {
  return std::visit(
      [](const auto &v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GluedMap>)
          return v.cone.n;
        else
          return v.n;
      },
      m);
}

inline MapSpec parse_map(std::string_view spec) {
  const auto [kind, rest] = detail::head_tail(spec);
  if (kind == "identity") {
    const auto kv = detail::parse_kv(rest, spec);
    detail::allow_keys(kv, {}, spec);
    return IdentityMap{kv.dims.empty() ? 2 : detail::dimension_of(kv.dims.back())};
  }
  if (kind == "cone" || kind == "glued") {
    constexpr std::string_view key = "phi=";
    if (rest.rfind(key, 0) != 0)
      throw UsageError("map spec '" + std::string(spec) + "' needs phi=<family>");
    const std::string body = rest.substr(key.size());
    const auto [fam, params] = detail::head_tail(body);
    const auto kv = detail::parse_kv(params, spec);
    if (kv.dims.size() > 2)
      throw UsageError("more than two n= in '" + std::string(spec) + "'");
    const int nphi = kv.dims.empty() ? 2 : detail::dimension_of(kv.dims.front());
    const int nmap = kv.dims.empty() ? nphi : detail::dimension_of(kv.dims.back());
    ConeMap m(detail::build_family(fam, kv, nphi, spec), nmap);
    if (kind == "cone")
      return m;
    return GluedMap(std::move(m));
  }
  if (kind == "radial") {
    const auto [stress, params] = detail::head_tail(rest);
    const auto kv = detail::parse_kv(params, spec);
    if (kv.dims.size() > 1)
      throw UsageError("repeated n= in '" + std::string(spec) + "'");
    const int n = kv.dims.empty() ? 2 : detail::dimension_of(kv.dims.front());
    try {
      if (stress == "power") {
        detail::allow_keys(kv, {"eps"}, spec);
        return RadialMap::power(detail::parse_real(detail::require(kv, "eps", spec), "eps"), n);
      }
      if (stress == "logexample") {
        detail::allow_keys(kv, {"beta"}, spec);
        const auto it = kv.values.find("beta");
        const double beta = it == kv.values.end() ? 1.0 : detail::parse_real(it->second, "beta");
        return RadialMap::log_example(beta, n);
      }
    } catch (const UsageError &) {
      throw;
    } catch (const std::invalid_argument &e) {
      throw UsageError(std::string(spec) + ": " + e.what());
    }
    throw UsageError("unknown radial stress '" + stress + "' in '" + std::string(spec) + "'");
  }
  throw UsageError("unknown map kind '" + kind + "' in '" + std::string(spec) + "'");
}

inline std::string describe(const MapSpec &m) {
  return std::visit(
      [](const auto &v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        const std::string n = ",n=" + std::to_string(map_dimension(MapSpec(v)));
        auto with_phi = [&](const char *kind, const ConeMap &m) {
          std::string s = std::string(kind) + ":phi=" + m.phi.describe();
          return m.phi.dimension() == m.n ? s : s + n;
        };
        if constexpr (std::is_same_v<T, IdentityMap>) {
          return "identity" + n;
        } else if constexpr (std::is_same_v<T, ConeMap>) {
          return with_phi("cone", v);
        } else if constexpr (std::is_same_v<T, GluedMap>) {
          return with_phi("glued", v.cone);
        } else if (const auto *p = std::get_if<PowerStress>(&v.stress)) {
          return "radial:power:eps=" + format_double(p->eps) + n;
        } else {
          return "radial:logexample:beta=" +
                 format_double(std::get<LogExampleStress>(v.stress).beta) + n;
        }
      },
      m);
}

/// log:a..b[:N] (N log-spaced points, default 24) or a comma list.
inline std::vector<double> parse_radii(std::string_view spec) {
  if (spec.rfind("log:", 0) == 0) {
    const auto body = spec.substr(4);
    const auto dots = body.find("..");
    if (dots == std::string_view::npos)
      throw UsageError("radii '" + std::string(spec) + "': expected log:a..b[:N]");
    const auto a = body.substr(0, dots);
    auto b = body.substr(dots + 2);
    int count = 24;
    if (const auto colon = b.find(':'); colon != std::string_view::npos) {
      count = detail::parse_int(b.substr(colon + 1), "radii count");
      b = b.substr(0, colon);
    }
    const double lo = detail::parse_real(a, "radii");
    const double hi = detail::parse_real(b, "radii");
    if (!(lo > 0.0) || !(hi >= lo) || count < 1 || (count == 1 && hi != lo))
      throw UsageError("radii '" + std::string(spec) + "': need 0 < a <= b and N >= 1");
    return count == 1 ? std::vector<double>{lo} : log_grid(lo, hi, count);
  }
  std::vector<double> out;
  for (const auto &item : detail::split(spec, ',')) {
    const double r = detail::parse_real(item, "radii");
    if (!(r > 0.0))
      throw UsageError("radii must be > 0, got " + item);
    out.push_back(r);
  }
  return out;
}

/// "0" is the origin; otherwise exactly n comma-separated coordinates.
inline ConePoint parse_center(std::string_view spec, int n) {
  if (spec == "0")
    return ConePoint::axis(n, 0.0);
  const auto items = detail::split(spec, ',');
  if (static_cast<int>(items.size()) != n)
    throw UsageError("center '" + std::string(spec) + "' needs " + std::to_string(n) +
                     " coordinates");
  Eigen::VectorXd x(n - 1);
  for (int i = 0; i < n - 1; ++i)
    x(i) = detail::parse_real(items[static_cast<std::size_t>(i)], "center");
  return {x, detail::parse_real(items.back(), "center")};
}

} // namespace bicon
