#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosegraph/graph.hpp"
#include "bosegraph/hamiltonian.hpp"
#include "bosegraph/observables.hpp"
#include "bosegraph/solver.hpp"

namespace bosegraph {

struct TauGrid {
  double tau_min = 0.0;
  double tau_max = 20.0;
  int steps = 401;

  TauGrid(double lo, double hi, int n) : tau_min(lo), tau_max(hi), steps(n) {
    if (n < 2 || !(hi > lo) || lo < 0.0)
      throw std::invalid_argument("invalid tau grid");
  }
  double spacing() const { return (tau_max - tau_min) / (steps - 1); }
  double tau(int i) const { return tau_min + spacing() * i; }
};

struct SweepPoint {
  double tau = 0.0;
  double energy = 0.0;
  double entanglement = 0.0;  // normalized
  std::vector<double> mean;   // per vertex
  std::vector<double> variance;
  bool degenerate = false;
};

struct SweepResult {
  std::string graph_name;
  int num_particles = 0;
  double epsilon = 1.0;
  TauGrid grid{0.0, 1.0, 2};
  std::vector<SweepPoint> points;
  std::vector<double> d_entanglement;  // dE/dtau on the grid
  std::vector<double> d_variance0;     // d var(vertex 0)/dtau
};

// Second-order finite differences: central in the interior, one-sided
// three-point stencils at the endpoints.
inline std::vector<double> derivative_series(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size());
  if (n < 3) throw std::invalid_argument("derivative_series needs >= 3 points");
  std::vector<double> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (int i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

// One ground-state solve per grid point, serially, reusing the previous
// point's vector as the Lanczos start.
inline SweepResult sweep(const RootedGraph& g, int num_particles, double epsilon,
                         const TauGrid& grid, const SolverOptions& opts = {}) {
  SweepResult result;
  result.graph_name = g.name;
  result.num_particles = num_particles;
  result.epsilon = epsilon;
  result.grid = grid;
  result.points.reserve(grid.steps);

  std::optional<std::vector<double>> warm;
  for (int i = 0; i < grid.steps; ++i) {
    const double tau = grid.tau(i);
    SectorHamiltonian h(g, num_particles, Couplings(tau, epsilon));
    GroundState gs;
    try {
      gs = ground_state(h, opts, warm);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep failed at tau = " + std::to_string(tau) +
                               ": " + e.what());
    }
    warm = gs.vector;

    SweepPoint p;
    p.tau = tau;
    p.energy = gs.energy;
    p.degenerate = gs.degenerate;
    for (int v = 0; v < g.num_vertices; ++v) {
      const auto m = mode_marginal(gs, h.sector(), v);
      const auto om = moments_from_marginal(m);
      p.mean.push_back(om.mean);
      p.variance.push_back(om.variance);
      if (v == 0) p.entanglement = entanglement(m, num_particles).normalized;
    }
    result.points.push_back(std::move(p));
  }

  std::vector<double> ent, var0;
  for (const auto& p : result.points) {
    ent.push_back(p.entanglement);
    var0.push_back(p.variance[0]);
  }
  result.d_entanglement = derivative_series(ent, grid.spacing());
  result.d_variance0 = derivative_series(var0, grid.spacing());
  return result;
}

struct EntanglementMax {
  double tau_star = 0.0;
  double e_star = 0.0;
  bool interior = false;  // false when the maximum sits at a range boundary
};

// Coarse scan to bracket the global maximum of E(tau), then golden-section
// refinement inside the bracket. Unimodality is assumed only within the
// bracket, which the scan establishes.
inline EntanglementMax find_entanglement_max(const RootedGraph& g, int num_particles,
                                             double epsilon, double tau_lo,
                                             double tau_hi, double tol,
                                             const SolverOptions& opts = {},
                                             int scan_points = 65) {
  if (!(tau_hi > tau_lo) || tol <= 0.0)
    throw std::invalid_argument("find_entanglement_max: bad search range");
  if (scan_points < 64) scan_points = 64;

  auto eval = [&](double tau) {
    SectorHamiltonian h(g, num_particles, Couplings(tau, epsilon));
    const auto gs = ground_state(h, opts);
    return entanglement(mode_marginal(gs, h.sector(), 0), num_particles).normalized;
  };

  const double step = (tau_hi - tau_lo) / (scan_points - 1);
  int best = 0;
  double best_val = -1.0;
  std::vector<double> values(scan_points);
  for (int i = 0; i < scan_points; ++i) {
    values[i] = eval(tau_lo + step * i);
    if (values[i] > best_val) {
      best_val = values[i];
      best = i;
    }
  }
  if (best == 0 || best == scan_points - 1) {
    return {tau_lo + step * best, best_val, false};
  }

  double a = tau_lo + step * (best - 1);
  double b = tau_lo + step * (best + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(x1);
    }
  }
  const double tau_star = (a + b) / 2.0;
  return {tau_star, eval(tau_star), true};
}

enum class SweepSeries { entanglement, variance };

struct DerivativePeak {
  double tau_peak = 0.0;
  double height = 0.0;
};

// Interior maximum of the finite-difference derivative, sharpened by a
// parabola through the peak triple.
inline DerivativePeak find_derivative_peak(const SweepResult& series,
                                           SweepSeries which, int vertex = 0) {
  if (series.points.size() < 5)
    throw std::invalid_argument("find_derivative_peak needs >= 5 points");
  std::vector<double> f;
  for (const auto& p : series.points)
    f.push_back(which == SweepSeries::entanglement
                    ? p.entanglement
                    : p.variance.at(static_cast<std::size_t>(vertex)));
  const double h = series.grid.spacing();
  const auto d = derivative_series(f, h);

  int best = 0;
  for (int i = 1; i < static_cast<int>(d.size()); ++i)
    if (d[i] > d[best]) best = i;
  if (best == 0 || best + 1 == static_cast<int>(d.size()))
    throw std::runtime_error("no interior peak: derivative is monotone on the grid");

  const double dm = d[best - 1], d0 = d[best], dp = d[best + 1];
  const double denom = dm - 2.0 * d0 + dp;
  DerivativePeak peak;
  const double shift = denom != 0.0 ? 0.5 * (dm - dp) / denom : 0.0;
  peak.tau_peak = series.grid.tau(best) + shift * h;
  peak.height = d0 - 0.25 * (dm - dp) * shift;
  return peak;
}

struct OrderingEntry {
  std::string name;
  double entanglement = 0.0;
  double lambda_full = 0.0;  // spectral radius of the graph adjacency
  double lambda_sub = 0.0;   // spectral radius of the root-deleted sub-graph
};

struct OrderingReport {
  double tau = 0.0;
  std::vector<OrderingEntry> entries;           // in input id order
  std::vector<std::string> rank_by_entanglement;  // descending
  std::vector<std::string> rank_by_lambda_full;
  std::vector<std::string> rank_by_lambda_sub;
  double concordance_full = 0.0;  // pairwise agreement of E vs lambda_full order
  double concordance_sub = 0.0;
};

inline OrderingReport ordering_report(const std::vector<int>& ids, int num_particles,
                                      double epsilon, double tau,
                                      const SolverOptions& opts = {}) {
  OrderingReport report;
  report.tau = tau;
  for (int id : ids) {
    const auto g = catalog_graph(id);
    SectorHamiltonian h(g, num_particles, Couplings(tau, epsilon));
    const auto gs = ground_state(h, opts);
    OrderingEntry e;
    e.name = g.name;
    e.entanglement =
        entanglement(mode_marginal(gs, h.sector(), 0), num_particles).normalized;
    e.lambda_full = adjacency_spectrum(g).lambda_max;
    e.lambda_sub = adjacency_spectrum(subgraph_without_root(g)).lambda_max;
    report.entries.push_back(std::move(e));
  }

  auto ranked = [&](auto key) {
    auto sorted = report.entries;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const auto& a, const auto& b) { return key(a) > key(b); });
    std::vector<std::string> names;
    for (const auto& e : sorted) names.push_back(e.name);
    return names;
  };
  report.rank_by_entanglement = ranked([](const OrderingEntry& e) { return e.entanglement; });
  report.rank_by_lambda_full = ranked([](const OrderingEntry& e) { return e.lambda_full; });
  report.rank_by_lambda_sub = ranked([](const OrderingEntry& e) { return e.lambda_sub; });

  auto concordance = [&](auto key) {
    int agree = 0, total = 0;
    for (std::size_t i = 0; i < report.entries.size(); ++i)
      for (std::size_t j = i + 1; j < report.entries.size(); ++j) {
        const auto& a = report.entries[i];
        const auto& b = report.entries[j];
        ++total;
        if ((a.entanglement > b.entanglement) == (key(a) > key(b))) ++agree;
      }
    return total > 0 ? static_cast<double>(agree) / total : 1.0;
  };
  report.concordance_full = concordance([](const OrderingEntry& e) { return e.lambda_full; });
  report.concordance_sub = concordance([](const OrderingEntry& e) { return e.lambda_sub; });
  return report;
}

}  // namespace bosegraph
