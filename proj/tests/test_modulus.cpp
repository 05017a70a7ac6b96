#include "bicon/modulus.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace bicon;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<ModulusFunction> admissible(int n) {
  return {ModulusFunction::identity(n), ModulusFunction::power(0.5, n),
          ModulusFunction::iterlog(1, 1.0, n), ModulusFunction::iterlog(2, 1.0, n),
          ModulusFunction::iterlog(3, 1.0, n)};
}

} // namespace

TEST_CASE("families satisfy the normalisation", "[modulus]") {
  for (int n : {2, 3}) {
    for (int k = 1; k <= 5; ++k) {
      const auto phi = ModulusFunction::iterlog(k, 1.0, n);
      CHECK(phi(0.0) == 0.0);
      CHECK_THAT(phi(1.0), WithinAbs(1.0, 1e-15));
      CHECK(phi(1.5) == 1.5);
      CHECK(phi(7.0) == 7.0);
    }
  }
  CHECK(ModulusFunction::power(0.25)(0.0625) == 0.5);
  CHECK(ModulusFunction::identity()(0.3) == 0.3);
}

TEST_CASE("iterlog agrees with direct evaluation", "[modulus]") {
  for (int n : {2, 3})
    for (int k = 1; k <= 3; ++k)
      for (double alpha : {0.75, 1.0}) {
        const auto phi = ModulusFunction::iterlog(k, alpha, n);
        for (double s : {0.9, 0.5, 1e-2, 1e-6, 1e-30, 1e-200}) {
          INFO("k=" << k << " n=" << n << " s=" << s);
          CHECK_THAT(phi(s), WithinRel(oracle::iterlog_phi(k, alpha, n, s), 1e-13));
        }
      }
}

TEST_CASE("at_log reaches beyond the double range", "[modulus]") {
  const auto phi = ModulusFunction::iterlog(1, 1.0, 2);
  const auto p = phi.at_log(1e6);
  CHECK_THAT(p.phi, WithinRel(1.0 / (1.0 + 1e6), 1e-14));
  CHECK_THAT(p.q, WithinRel(1.0 / (1.0 + 1e6), 1e-14));
  const auto deep = ModulusFunction::iterlog(4, 1.0, 3).at_log(1e300);
  CHECK(deep.phi > 0.0);
  CHECK(deep.q >= 0.0);
  CHECK(deep.q <= 1.0);
}

TEST_CASE("derivatives match finite differences", "[modulus]") {
  for (const auto &phi : admissible(2)) {
    const std::function<double(double)> f = [&](double s) { return phi(s); };
    const std::function<double(double)> df = [&](double s) { return derivative(phi, s); };
    for (double s : {0.7, 0.3, 0.05, 1e-3}) {
      INFO(phi.describe() << " s=" << s);
      CHECK_THAT(derivative(phi, s), WithinRel(oracle::central_difference(f, s, 1e-6 * s), 1e-7));
      CHECK_THAT(second_derivative(phi, s),
                 WithinRel(oracle::central_difference(df, s, 1e-5 * s), 1e-5) ||
                     WithinAbs(0.0, 1e-9));
      CHECK_THAT(lambda(phi, s), WithinRel(phi(s) / s, 1e-14));
      CHECK_THAT(elasticity(phi, s), WithinRel(s * derivative(phi, s) / phi(s), 1e-12));
    }
  }
}

TEST_CASE("power family spot values", "[modulus]") {
  const auto phi = ModulusFunction::power(0.5);
  CHECK_THAT(derivative(phi, 0.25), WithinRel(1.0, 1e-14));
  CHECK_THAT(second_derivative(phi, 0.25), WithinRel(-2.0, 1e-14));
  CHECK_THAT(lambda(phi, 0.25), WithinRel(2.0, 1e-14));
  CHECK_THAT(invert(phi, 0.5), WithinAbs(0.25, 1e-12));
  CHECK(derivative(phi, 2.0) == 1.0);
  CHECK(lambda(phi, 3.0) == 1.0);
  CHECK_THROWS_AS(derivative(phi, 0.0), std::invalid_argument);
}

TEST_CASE("invert round trips", "[modulus]") {
  for (const auto &phi : admissible(3)) {
    for (double v : {0.9, 0.5, 0.3, 0.2}) {
      const double s = invert(phi, v);
      INFO(phi.describe() << " v=" << v);
      CHECK_THAT(phi(s), WithinAbs(v, 1e-12));
    }
  }
  CHECK(invert(ModulusFunction::power(0.5), 2.0) == 2.0);
  CHECK(invert(ModulusFunction::power(0.5), 0.0) == 0.0);
}

TEST_CASE("energy functional closed forms", "[modulus]") {
  for (int n : {2, 3}) {
    for (double eps : {0.25, 0.5, 1.0}) {
      const auto e = energy_functional(ModulusFunction::power(eps, n), n);
      CHECK(e.converged);
      CHECK_THAT(e.value, WithinRel(oracle::power_energy(n, eps), 1e-8));
    }
    for (double alpha : {0.75, 1.0}) {
      const auto e1 = energy_functional(ModulusFunction::iterlog(1, alpha, n), n);
      CHECK_THAT(e1.value, WithinRel(oracle::iterlog1_energy(n, alpha), 1e-8));
      const auto e2 = energy_functional(ModulusFunction::iterlog(2, alpha, n), n);
      CHECK_THAT(e2.value, WithinRel(oracle::iterlog2_energy(n, alpha), 1e-8));
    }
  }
}

TEST_CASE("energy is refinement stable for deep towers", "[modulus]") {
  for (int k : {3, 4, 5}) {
    const auto phi = ModulusFunction::iterlog(k, 1.0, 2);
    const auto coarse = energy_functional(phi, 2, 1e-6);
    const auto fine = energy_functional(phi, 2, 1e-9);
    INFO("k=" << k);
    CHECK(fine.converged);
    CHECK_THAT(coarse.value, WithinRel(fine.value, 1e-5));
  }
}

TEST_CASE("divergent energy is flagged", "[modulus]") {
  const auto e = energy_functional(ModulusFunction::iterlog(1, 0.4, 2), 2);
  CHECK_FALSE(e.converged);
  CHECK(std::isinf(e.value));
}

TEST_CASE("condition suite", "[modulus]") {
  for (int n : {2, 3})
    for (const auto &phi : admissible(n)) {
      const auto rep = check_conditions(phi, 1024);
      INFO(phi.describe());
      CHECK(rep.all_pass());
      CHECK(rep.find("C2")->measured_constant >= 1.0 - 1e-12);
    }
  const auto bad = check_conditions(ModulusFunction::iterlog(1, 0.4, 2), 1024);
  CHECK_FALSE(bad.find("C3")->pass);
  CHECK(bad.find("C1")->pass);
}

TEST_CASE("measured constants", "[modulus]") {
  // iterlog k=1, alpha=1: q = 1/(1+u), so (s/phi)/q^2 = (1+u)^3 e^{-u}, peak at u = 2.
  const auto phi = ModulusFunction::iterlog(1, 1.0, 2);
  CHECK_THAT(phi.M(), WithinRel(27.0 * std::exp(-2.0), 1e-9));
  // phi'' = 0 where q^2 - q - dq/du = 0, at u = 1 for this family.
  CHECK_THAT(phi.concavity_radius(), WithinRel(std::exp(-1.0), 1e-2));
  CHECK(phi.concavity_radius() <= std::exp(-1.0));
  CHECK(ModulusFunction::identity().M() == 1.0);
  CHECK_THAT(ModulusFunction::power(0.5).M(), WithinRel(4.0, 1e-9));
}

TEST_CASE("custom family by finite differences", "[modulus]") {
  const auto phi = ModulusFunction::custom([](double s) { return std::sqrt(s); }, 2, "sqrt");
  CHECK(phi.is_custom());
  CHECK_THAT(phi.M(), WithinRel(4.0, 1e-3));
  CHECK_THAT(derivative(phi, 0.25), WithinRel(1.0, 1e-6));
  const auto rep = check_conditions(phi, 256);
  CHECK(rep.find("C1")->pass);
  CHECK(rep.find("C2")->pass);
}

TEST_CASE("doubling constants", "[modulus]") {
  for (double eps : {0.25, 0.5, 1.0})
    CHECK_THAT(doubling_constant(ModulusFunction::power(eps), 2.0), WithinRel(std::pow(2.0, eps), 1e-12));
  const auto phi = ModulusFunction::iterlog(1, 1.0, 2);
  // phi(2t)/phi(t) = (1 + log(1/t)) / (1 + log(1/t) - log 2) is largest at t = 1/2.
  CHECK_THAT(doubling_constant(phi, 2.0), WithinRel(1.0 / phi(0.5), 1e-9));
}

TEST_CASE("quasi-inverse defect", "[modulus]") {
  const auto phi = ModulusFunction::power(0.5);
  const auto d = quasi_inverse_defect([&](double t) { return phi(t); },
                                      [&](double v) { return invert(phi, v, 1e-16); }, 64, 1e-6);
  CHECK_THAT(d.m, WithinRel(1.0, 1e-9));
  CHECK_THAT(d.Mq, WithinRel(1.0, 1e-9));
}

TEST_CASE("random points respect monotonicity and q <= 1", "[modulus]") {
  std::mt19937_64 rng(2024);
  for (const auto &phi : admissible(2)) {
    for (int i = 0; i < 500; ++i) {
      const double u1 = 50.0 * uniform01(rng);
      const double u2 = u1 + 10.0 * uniform01(rng) + 1e-9;
      const auto p1 = phi.at_log(u1);
      const auto p2 = phi.at_log(u2);
      CHECK(p2.phi <= p1.phi);                     // phi increasing in s
      CHECK(p2.inv_lambda <= p1.inv_lambda * (1 + 1e-14)); // phi(s)/s non-increasing
      CHECK(p1.q <= 1.0 + 1e-14);
    }
  }
}
