#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosegraph/hamiltonian.hpp"

namespace bosegraph {

enum class SolverKind { dense, lanczos };

struct GroundState {
  double energy = 0.0;
  std::vector<double> vector;   // unit norm, sign-fixed
  double gap_estimate = 0.0;    // second Ritz value minus lowest
  SolverKind solver_used = SolverKind::dense;
  bool degenerate = false;      // gap below the warning threshold
};

struct SolverOptions {
  double tolerance = 1e-10;          // residual bound ||Hv - Ev||
  int max_iterations = 5000;
  std::uint64_t dense_threshold = 2000;
  double degeneracy_warning_gap = 1e-8;
};

namespace detail {

// Largest-magnitude component made positive; resolves the overall sign.
inline void fix_sign(std::vector<double>& v) {
  double best = 0.0;
  for (double x : v)
    if (std::abs(x) > std::abs(best)) best = x;
  if (best < 0.0)
    for (double& x : v) x = -x;
}

inline void normalize(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
}

}  // namespace detail

// Full symmetric eigendecomposition; the validation oracle.
inline GroundState dense_ground_state(const SectorHamiltonian& h,
                                      const SolverOptions& opts = {}) {
  if (h.dimension() > 20000)
    throw std::invalid_argument("dense_ground_state: dimension " +
                                std::to_string(h.dimension()) + " exceeds guard");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense());
  GroundState gs;
  gs.energy = solver.eigenvalues()(0);
  gs.gap_estimate =
      h.dimension() > 1 ? solver.eigenvalues()(1) - solver.eigenvalues()(0) : 0.0;
  const auto col = solver.eigenvectors().col(0);
  gs.vector.assign(col.data(), col.data() + h.dimension());
  detail::normalize(gs.vector);
  detail::fix_sign(gs.vector);
  gs.solver_used = SolverKind::dense;
  gs.degenerate = h.dimension() > 1 && gs.gap_estimate < opts.degeneracy_warning_gap;
  return gs;
}

// Lanczos with full reorthogonalization against every stored basis vector.
// Deterministic: defaults to the uniform positive start vector, which for
// tau > 0 on a connected graph already overlaps the Perron ground state.
inline GroundState lanczos_ground_state(
    const SectorHamiltonian& h, const SolverOptions& opts = {},
    const std::optional<std::vector<double>>& start = std::nullopt) {
  const std::uint64_t dim = h.dimension();
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;

  std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  if (start) {
    if (start->size() != dim)
      throw std::invalid_argument("lanczos start vector has wrong length");
    v = *start;
    detail::normalize(v);
  }
  basis.push_back(v);

  const int max_steps =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(opts.max_iterations), dim);
  std::vector<double> w(dim);
  Eigen::VectorXd ritz;
  Eigen::MatrixXd ritz_vecs;
  double best_residual = std::numeric_limits<double>::infinity();
  bool exhausted_space = false;

  for (int step = 0; step < max_steps; ++step) {
    h.matvec(basis.back(), w);
    double a = 0.0;
    for (std::uint64_t k = 0; k < dim; ++k) a += basis.back()[k] * w[k];
    alpha.push_back(a);

    // two Gram-Schmidt passes keep the basis orthogonal to machine precision
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        double dot = 0.0;
        for (std::uint64_t k = 0; k < dim; ++k) dot += q[k] * w[k];
        for (std::uint64_t k = 0; k < dim; ++k) w[k] -= dot * q[k];
      }
    double b = 0.0;
    for (double x : w) b += x * x;
    b = std::sqrt(b);

    // Ritz values of the current tridiagonal projection
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
    ritz = small.eigenvalues();
    ritz_vecs = small.eigenvectors();

    const double residual = b * std::abs(ritz_vecs(m - 1, 0));
    best_residual = std::min(best_residual, residual);
    if (residual <= opts.tolerance || b < 1e-14 ||
        static_cast<std::uint64_t>(m) == dim) {
      exhausted_space = b < 1e-14 || static_cast<std::uint64_t>(m) == dim;
      if (residual <= opts.tolerance || exhausted_space) break;
    }
    beta.push_back(b);
    for (double& x : w) x /= b;
    basis.push_back(w);
  }

  const int m = static_cast<int>(alpha.size());
  if (!exhausted_space && best_residual > opts.tolerance &&
      m >= opts.max_iterations)
    throw std::runtime_error("lanczos did not converge; best residual " +
                             std::to_string(best_residual));

  GroundState gs;
  gs.energy = ritz(0);
  gs.gap_estimate = m > 1 ? ritz(1) - ritz(0) : 0.0;
  gs.vector.assign(dim, 0.0);
  for (int i = 0; i < m; ++i) {
    const double c = ritz_vecs(i, 0);
    for (std::uint64_t k = 0; k < dim; ++k) gs.vector[k] += c * basis[i][k];
  }
  detail::normalize(gs.vector);
  detail::fix_sign(gs.vector);
  gs.solver_used = SolverKind::lanczos;
  gs.degenerate = dim > 1 && gs.gap_estimate < opts.degeneracy_warning_gap;
  return gs;
}

// Lowest eigenpair: dense below the threshold, Lanczos above it.
inline GroundState ground_state(
    const SectorHamiltonian& h, const SolverOptions& opts = {},
    const std::optional<std::vector<double>>& warm_start = std::nullopt) {
  if (h.dimension() < 1) throw std::invalid_argument("empty sector");
  if (h.dimension() <= opts.dense_threshold) return dense_ground_state(h, opts);
  return lanczos_ground_state(h, opts, warm_start);
}

}  // namespace bosegraph
