// A short tour of the glued deformation built from an iterated-log modulus:
// the modulus and its inverse, the sampled moduli of H and F at the origin,
// the linear dilatation and both conformal energies.

#include "bicon/bicon.hpp"

#include <cstdio>

int main() {
  using namespace bicon;
  const int n = 2;
  const auto phi = ModulusFunction::iterlog(2, 1.0, n);
  const GluedMap g{ConeMap(phi)};
  const auto H = make_deformation(g);
  const auto F = inverse_of(H);
  const auto origin = ConePoint::axis(n, 0.0);

  std::printf("phi = %s  M = %.6f  r = %.6f\n", phi.describe().c_str(), phi.M(),
              phi.concavity_radius());
  std::printf("%12s %14s %14s %14s %14s\n", "s", "phi(s)", "psi(s)", "omega_H", "omega_F");
  for (int k = 1; k <= 8; ++k) {
    const double s = std::pow(10.0, -k);
    std::printf("%12.3e %14.6e %14.6e %14.6e %14.6e\n", s, phi(s), invert(phi, s),
                optimal_modulus(H, origin, s, NormKind::cone, 512, 1),
                optimal_modulus(F, origin, s, NormKind::cone, 512, 1));
  }

  const auto dil = linear_dilatation(H, origin, log_grid(1e-8, 0.5, 8), 256, 1);
  std::printf("\nlinear dilatation at 0: %s\n", to_string(dil.verdict));
  for (std::size_t i = 0; i < dil.radii.size(); ++i)
    std::printf("  r = %.3e  max/min = %.4e\n", dil.radii[i], dil.ratios[i]);

  const auto e = biconformal_energy(g, 1e-6);
  std::printf("\nE[phi] = %.8f\n", energy_functional(phi, n).value);
  std::printf("int_C+ |DH|^n = %.8f   int_C+ K_H = %.8f\n", e.upper_H.value, e.upper_K.value);
  std::printf("E[H] = E[F] = %.8f\n", e.energy_H);
  return 0;
}
