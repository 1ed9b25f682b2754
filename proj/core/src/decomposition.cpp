#include "squeeze/decomposition.hpp"

#include <cmath>

namespace squeeze {

SqueezeParams decompose(const CorrelatorPair& pair) {
  const double diff = std::abs(pair.k_ff);      // A - B
  const double sum = std::abs(pair.k_ffstar);   // A + B
  SqueezeParams p;
  p.a = 0.5 * (sum + diff);
  p.b = 0.5 * (sum - diff);
  p.degenerate = diff == 0.0 || sum == 0.0;
  const double plus = diff == 0.0 ? 0.0 : std::arg(pair.k_ff);
  const double minus = sum == 0.0 ? 0.0 : std::arg(pair.k_ffstar);
  p.phi = 0.5 * (plus + minus);
  p.psi = 0.5 * (plus - minus);
  if (p.phi > 0.5 * kPi) {
    p.phi -= kPi;
    p.psi -= kPi;
  } else if (p.phi <= -0.5 * kPi) {
    p.phi += kPi;
    p.psi += kPi;
  }
  return p;
}

CorrelatorPair reconstruct(const SqueezeParams& p, double delta_weight) {
  CorrelatorPair out;
  out.k_ff = (p.a - p.b) * std::polar(1.0, p.phi + p.psi);
  out.k_ffstar = (p.a + p.b) * std::polar(1.0, p.phi - p.psi);
  out.delta_weight = delta_weight;
  return out;
}

double evaluate(const SqueezeParams& p, double phi1, double phi2) {
  return p.a * std::cos(phi1 - p.phi) * std::cos(phi2 - p.psi) + p.b * std::sin(phi1 - p.phi) * std::sin(phi2 - p.psi);
}

std::vector<double> ellipse(const SqueezeParams& p, std::span<const double> phi_grid) {
  std::vector<double> out;
  out.reserve(phi_grid.size());
  for (double phi : phi_grid) out.push_back(evaluate(p, phi, phi));
  return out;
}

}  // namespace squeeze
