#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bosegraph/fock.hpp"
#include "bosegraph/graph.hpp"
#include "bosegraph/solver.hpp"

namespace bosegraph {

// Occupation distribution of one vertex. Because total particle number is
// fixed, the reduced density matrix of a single mode is diagonal, so these
// probabilities carry the full reduced state.
struct ModeMarginal {
  int vertex = 0;
  std::vector<double> probabilities;  // p_n for n = 0..N
};

struct EntanglementValue {
  double raw_entropy = 0.0;  // bits
  double normalized = 0.0;   // raw / log2(N+1), in [0, 1]
};

struct OccupationMoments {
  int vertex = 0;
  double mean = 0.0;
  double variance = 0.0;
};

inline ModeMarginal mode_marginal(const GroundState& gs, const SectorIndex& sector,
                                  int vertex) {
  if (vertex < 0 || vertex >= sector.num_modes)
    throw std::out_of_range("mode_marginal: vertex out of range");
  ModeMarginal m;
  m.vertex = vertex;
  m.probabilities.assign(sector.num_particles + 1, 0.0);
  for_each_state(sector, [&](std::uint64_t k, const Occupation& occ) {
    m.probabilities[occ[vertex]] += gs.vector[k] * gs.vector[k];
  });
  return m;
}

// Shannon entropy of the probability vector, in bits.
inline double shannon_entropy_bits(const std::vector<double>& p) {
  double s = 0.0;
  for (double q : p)
    if (q > 0.0) s -= q * std::log2(q);
  return s;
}

// Normalized mode entanglement: von Neumann entropy of the one-mode
// marginal over its maximum log2(N+1).
inline EntanglementValue entanglement(const ModeMarginal& m, int num_particles) {
  if (num_particles < 1)
    throw std::invalid_argument("entanglement: normalization undefined for N = 0");
  EntanglementValue e;
  e.raw_entropy = shannon_entropy_bits(m.probabilities);
  e.normalized = e.raw_entropy / std::log2(static_cast<double>(num_particles) + 1.0);
  return e;
}

inline OccupationMoments moments_from_marginal(const ModeMarginal& m) {
  OccupationMoments om;
  om.vertex = m.vertex;
  double second = 0.0;
  for (std::size_t n = 0; n < m.probabilities.size(); ++n) {
    om.mean += static_cast<double>(n) * m.probabilities[n];
    second += static_cast<double>(n) * n * m.probabilities[n];
  }
  om.variance = second - om.mean * om.mean;
  return om;
}

inline OccupationMoments occupation_moments(const GroundState& gs,
                                            const SectorIndex& sector, int vertex) {
  return moments_from_marginal(mode_marginal(gs, sector, vertex));
}

// Squared overlap of the ground state with the condensate of all N bosons
// in the uniform mode over the non-root vertices {1, ..., L-1}.
inline double condensate_overlap(const GroundState& gs, const SectorIndex& sector) {
  const int num_modes = sector.num_modes;
  const int n = sector.num_particles;
  if (num_modes < 2) throw std::invalid_argument("condensate_overlap needs L >= 2");
  const double log_prefactor =
      0.5 * std::lgamma(n + 1.0) - 0.5 * n * std::log(num_modes - 1.0);
  double overlap = 0.0;
  for_each_state(sector, [&](std::uint64_t k, const Occupation& occ) {
    if (occ[0] != 0) return;
    double log_amp = log_prefactor;
    for (int ni : occ) log_amp -= 0.5 * std::lgamma(ni + 1.0);
    overlap += gs.vector[k] * std::exp(log_amp);
  });
  return overlap * overlap;
}

struct DimerAnalytic {
  EntanglementValue entanglement;
  double variance = 0.0;
  double theta = 0.0;
};

// Closed form for the two-site system at N = 2: mixing angle
// theta = -atan(2 tau / epsilon), marginal (sin^2(t/2)/2, cos^2(t/2),
// sin^2(t/2)/2), variance sin^2(theta/2) = (1 - 1/sqrt(1+4(tau/eps)^2))/2.
inline DimerAnalytic dimer_analytic(double tau, double epsilon) {
  if (epsilon <= 0.0)
    throw std::invalid_argument(
        "dimer_analytic: closed form degenerates at epsilon = 0; use the "
        "numerical path");
  DimerAnalytic out;
  out.theta = -std::atan(2.0 * tau / epsilon);
  const double s2 = std::sin(out.theta / 2.0) * std::sin(out.theta / 2.0);
  ModeMarginal m;
  m.probabilities = {s2 / 2.0, 1.0 - s2, s2 / 2.0};
  out.entanglement = entanglement(m, 2);
  out.variance = s2;
  return out;
}

// Analytic derivative of the dimer variance with respect to tau (eps = 1).
inline double dimer_variance_derivative(double tau) {
  return 2.0 * tau * std::pow(1.0 + 4.0 * tau * tau, -1.5);
}

}  // namespace bosegraph
