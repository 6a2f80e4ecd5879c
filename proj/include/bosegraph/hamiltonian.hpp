#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bosegraph/fock.hpp"
#include "bosegraph/graph.hpp"

namespace bosegraph {

struct Couplings {
  double tau = 1.0;      // tunneling amplitude, in units of epsilon
  double epsilon = 1.0;  // self-interaction strength

  Couplings(double tau_, double epsilon_) : tau(tau_), epsilon(epsilon_) {
    if (tau < 0.0 || epsilon < 0.0)
      throw std::invalid_argument("couplings must be nonnegative");
  }
};

// Fixed-N sector matrix of the Bose-Hubbard Hamiltonian on a graph:
// diagonal epsilon * sum n_i^2, off-diagonal -tau * sqrt((n_i+1) n_j)
// per edge. Only the upper triangle (row < col) is stored; matvec applies
// entries symmetrically, so the matrix stays exactly symmetric.
class SectorHamiltonian {
 public:
  SectorHamiltonian(const RootedGraph& g, int num_particles, Couplings c)
      : sector_(SectorIndex::make(g.num_vertices, num_particles)), couplings_(c) {
    const std::uint64_t dim = sector_.dimension;
    diagonal_.resize(dim);
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(dim);
    for_each_state(sector_, [&](std::uint64_t k, const Occupation& occ) {
      double n2 = 0.0;
      for (int n : occ) n2 += static_cast<double>(n) * n;
      diagonal_[k] = c.epsilon * n2;
      if (c.tau == 0.0) return;  // nothing to hop; keep the structure empty
      for (const auto& [i, j] : g.edges) {
        // both hop directions; keep only targets above the diagonal
        for (const auto& [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
          auto hop = hop_apply(occ, a, b);
          if (!hop) continue;
          const std::uint64_t target = rank_occupation(hop->first, sector_);
          if (target > k)
            rows[k].push_back({static_cast<std::uint32_t>(target),
                               -c.tau * hop->second});
        }
      }
    });
    row_start_.resize(dim + 1);
    row_start_[0] = 0;
    for (std::uint64_t k = 0; k < dim; ++k)
      row_start_[k + 1] = row_start_[k] + rows[k].size();
    cols_.reserve(row_start_[dim]);
    values_.reserve(row_start_[dim]);
    for (const auto& row : rows)
      for (const auto& [col, val] : row) {
        cols_.push_back(col);
        values_.push_back(val);
      }
  }

  const SectorIndex& sector() const { return sector_; }
  const Couplings& couplings() const { return couplings_; }
  std::uint64_t dimension() const { return sector_.dimension; }
  const std::vector<double>& diagonal() const { return diagonal_; }
  std::size_t offdiagonal_count() const { return values_.size(); }

  void matvec(const std::vector<double>& x, std::vector<double>& y) const {
    const std::uint64_t dim = sector_.dimension;
    if (x.size() != dim) throw std::invalid_argument("matvec: length mismatch");
    y.assign(dim, 0.0);
    for (std::uint64_t r = 0; r < dim; ++r) {
      double acc = diagonal_[r] * x[r];
      for (std::size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) {
        const std::uint32_t c = cols_[e];
        const double v = values_[e];
        acc += v * x[c];
        y[c] += v * x[r];
      }
      y[r] += acc;
    }
  }

  std::vector<double> matvec(const std::vector<double>& x) const {
    std::vector<double> y;
    matvec(x, y);
    return y;
  }

  // Dense copy, for the oracle solver and small-sector work.
  Eigen::MatrixXd dense() const {
    const auto dim = static_cast<Eigen::Index>(sector_.dimension);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      m(r, r) = diagonal_[r];
      for (std::size_t e = row_start_[r]; e < row_start_[r + 1]; ++e) {
        m(r, cols_[e]) = values_[e];
        m(cols_[e], r) = values_[e];
      }
    }
    return m;
  }

 private:
  SectorIndex sector_;
  Couplings couplings_;
  std::vector<double> diagonal_;
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> values_;
};

inline SectorHamiltonian build_hamiltonian(const RootedGraph& g, int num_particles,
                                           Couplings c) {
  return SectorHamiltonian(g, num_particles, c);
}

}  // namespace bosegraph
