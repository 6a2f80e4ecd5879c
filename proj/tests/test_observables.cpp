#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>

#include "bosegraph/observables.hpp"

using namespace bosegraph;

namespace {

GroundState solve(const RootedGraph& g, int n, double tau, double eps) {
  return ground_state(SectorHamiltonian(g, n, Couplings(tau, eps)));
}

// Brute-force reduced density matrix of vertex 0: group basis amplitudes by
// the occupation of the remaining vertices and accumulate outer products.
Eigen::MatrixXd brute_force_rho0(const GroundState& gs, const SectorIndex& sector) {
  const int n = sector.num_particles;
  std::map<Occupation, Eigen::VectorXd> blocks;
  for_each_state(sector, [&](std::uint64_t k, const Occupation& occ) {
    Occupation rest(occ.begin() + 1, occ.end());
    auto [it, inserted] = blocks.try_emplace(rest, Eigen::VectorXd::Zero(n + 1));
    it->second(occ[0]) += gs.vector[k];
  });
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (const auto& [rest, amp] : blocks) rho += amp * amp.transpose();
  return rho;
}

}  // namespace

TEST_CASE("marginal at tau = 0 unit filling is a point mass at n = 1") {
  const auto g = catalog_graph(8);
  const auto gs = solve(g, 4, 0.0, 1.0);
  const auto m = mode_marginal(gs, SectorIndex::make(4, 4), 0);
  CHECK_THAT(m.probabilities[1], Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(m.probabilities[0] + m.probabilities[2] + m.probabilities[3] +
                 m.probabilities[4],
             Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("pure-tunneling dimer marginal is Binomial(2, 1/2)") {
  const auto gs = solve(complete_graph(2), 2, 1.0, 0.0);
  const auto m = mode_marginal(gs, SectorIndex::make(2, 2), 0);
  CHECK_THAT(m.probabilities[0], Catch::Matchers::WithinAbs(0.25, 1e-10));
  CHECK_THAT(m.probabilities[1], Catch::Matchers::WithinAbs(0.5, 1e-10));
  CHECK_THAT(m.probabilities[2], Catch::Matchers::WithinAbs(0.25, 1e-10));
}

TEST_CASE("pure-tunneling complete-graph marginal is Binomial(N, 1/L)") {
  for (int size : {3, 4, 5}) {
    const auto gs = solve(complete_graph(size), size, 1.0, 0.0);
    const auto m = mode_marginal(gs, SectorIndex::make(size, size), 0);
    for (int n = 0; n <= size; ++n) {
      const double expected = detail::checked_binomial(size, n) *
                              std::pow(1.0 / size, n) *
                              std::pow(1.0 - 1.0 / size, size - n);
      CHECK_THAT(m.probabilities[n], Catch::Matchers::WithinAbs(expected, 1e-10));
    }
  }
}

TEST_CASE("marginal rejects out-of-range vertices") {
  const auto gs = solve(complete_graph(2), 2, 1.0, 1.0);
  CHECK_THROWS_AS(mode_marginal(gs, SectorIndex::make(2, 2), 2), std::out_of_range);
}

TEST_CASE("partial-trace oracle: rho_0 is diagonal and matches the marginal") {
  const auto sector = SectorIndex::make(4, 4);
  for (int id = 3; id <= 13; ++id) {
    const auto g = catalog_graph(id);
    for (double tau : {0.1, 1.0, 20.0}) {
      const auto gs = solve(g, 4, tau, 1.0);
      const auto rho = brute_force_rho0(gs, sector);
      const auto m = mode_marginal(gs, sector, 0);
      for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
          if (a == b)
            REQUIRE_THAT(rho(a, a),
                         Catch::Matchers::WithinAbs(m.probabilities[a], 1e-12));
          else
            REQUIRE(std::abs(rho(a, b)) <= 1e-12);
        }
    }
  }
}

TEST_CASE("entanglement values") {
  ModeMarginal pure;
  pure.probabilities = {0.0, 1.0, 0.0, 0.0, 0.0};
  CHECK(entanglement(pure, 4).normalized == 0.0);

  ModeMarginal binom;
  binom.probabilities = {0.25, 0.5, 0.25};
  const auto e = entanglement(binom, 2);
  CHECK_THAT(e.raw_entropy, Catch::Matchers::WithinAbs(1.5, 1e-12));
  CHECK_THAT(e.normalized, Catch::Matchers::WithinAbs(1.5 / std::log2(3.0), 1e-12));

  CHECK_THROWS_AS(entanglement(binom, 0), std::invalid_argument);
}

TEST_CASE("entanglement of the interacting dimer at tau = 1") {
  const auto gs = solve(complete_graph(2), 2, 1.0, 1.0);
  const auto e = entanglement(mode_marginal(gs, SectorIndex::make(2, 2), 0), 2);
  CHECK_THAT(e.normalized, Catch::Matchers::WithinAbs(0.710984, 1e-4));
}

TEST_CASE("entanglement is permutation-invariant normalized Shannon entropy") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    ModeMarginal m;
    double total = 0.0;
    for (int i = 0; i < 5; ++i) {
      m.probabilities.push_back(unit(rng));
      total += m.probabilities.back();
    }
    for (double& p : m.probabilities) p /= total;
    const auto before = entanglement(m, 4);
    CHECK_THAT(before.raw_entropy,
               Catch::Matchers::WithinAbs(shannon_entropy_bits(m.probabilities), 1e-14));
    std::shuffle(m.probabilities.begin(), m.probabilities.end(), rng);
    CHECK_THAT(entanglement(m, 4).normalized,
               Catch::Matchers::WithinAbs(before.normalized, 1e-13));
    CHECK(before.normalized >= 0.0);
    CHECK(before.normalized <= 1.0);
  }
}

TEST_CASE("occupation moments") {
  const auto g = catalog_graph(6);
  const auto sector = SectorIndex::make(4, 4);

  const auto frozen = occupation_moments(solve(g, 4, 0.0, 1.0), sector, 0);
  CHECK_THAT(frozen.mean, Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(frozen.variance, Catch::Matchers::WithinAbs(0.0, 1e-12));

  const auto dimer = occupation_moments(
      solve(complete_graph(2), 2, 1.0, 1.0), SectorIndex::make(2, 2), 0);
  CHECK_THAT(dimer.variance,
             Catch::Matchers::WithinAbs((1.0 - 1.0 / std::sqrt(5.0)) / 2.0, 1e-6));
  CHECK_THAT(dimer.mean, Catch::Matchers::WithinAbs(1.0, 1e-10));

  // means sum to N for any ground state
  const auto gs = solve(catalog_graph(7), 4, 2.7, 1.0);
  double total = 0.0;
  for (int v = 0; v < 4; ++v) total += occupation_moments(gs, sector, v).mean;
  CHECK_THAT(total, Catch::Matchers::WithinAbs(4.0, 1e-10));
}

TEST_CASE("vertex-transitive graphs have identical marginals on every vertex") {
  for (const auto& [g, n] : {std::pair{complete_graph(2), 2},
                             {complete_graph(4), 4}, {complete_graph(5), 5}}) {
    const auto gs = solve(g, n, 0.7, 1.0);
    const auto sector = SectorIndex::make(g.num_vertices, n);
    const auto ref = mode_marginal(gs, sector, 0);
    for (int v = 1; v < g.num_vertices; ++v) {
      const auto m = mode_marginal(gs, sector, v);
      for (int i = 0; i <= n; ++i)
        CHECK(std::abs(m.probabilities[i] - ref.probabilities[i]) <= 1e-10);
    }
  }
}

TEST_CASE("condensate overlap") {
  const auto sector = SectorIndex::make(4, 4);

  // the condensate state itself overlaps perfectly
  GroundState cond;
  cond.vector.assign(sector.dimension, 0.0);
  for_each_state(sector, [&](std::uint64_t k, const Occupation& occ) {
    if (occ[0] != 0) return;
    double log_amp = 0.5 * std::lgamma(5.0) - 0.5 * 4.0 * std::log(3.0);
    for (int ni : occ) log_amp -= 0.5 * std::lgamma(ni + 1.0);
    cond.vector[k] = std::exp(log_amp);
  });
  CHECK_THAT(condensate_overlap(cond, sector), Catch::Matchers::WithinAbs(1.0, 1e-12));

  // unit filling has n_0 = 1, orthogonal to every n_0 = 0 state
  const auto frozen = solve(catalog_graph(5), 4, 0.0, 1.0);
  CHECK_THAT(condensate_overlap(frozen, sector), Catch::Matchers::WithinAbs(0.0, 1e-12));

  CHECK_THROWS_AS(condensate_overlap(cond, SectorIndex::make(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("dimer closed form") {
  const auto at_zero = dimer_analytic(0.0, 1.0);
  CHECK(at_zero.entanglement.normalized == 0.0);
  CHECK(at_zero.variance == 0.0);
  CHECK(at_zero.theta == 0.0);

  const auto at_one = dimer_analytic(1.0, 1.0);
  CHECK_THAT(at_one.variance, Catch::Matchers::WithinAbs(0.276393, 1e-6));
  CHECK_THAT(at_one.entanglement.normalized, Catch::Matchers::WithinAbs(0.710984, 1e-5));
  CHECK_THAT(at_one.theta, Catch::Matchers::WithinAbs(-std::atan(2.0), 1e-14));

  // large-tau limit approaches the pure-tunneling binomial
  const auto deep = dimer_analytic(1e8, 1.0);
  CHECK_THAT(deep.entanglement.normalized,
             Catch::Matchers::WithinAbs(1.5 / std::log2(3.0), 1e-6));
  CHECK_THAT(deep.variance, Catch::Matchers::WithinAbs(0.5, 1e-6));

  CHECK_THROWS_AS(dimer_analytic(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("closed form tracks the numerical dimer pipeline") {
  for (int i = 0; i < 50; ++i) {
    const double tau = 20.0 * i / 49.0;
    const auto analytic = dimer_analytic(tau, 1.0);
    const auto gs = solve(complete_graph(2), 2, tau, 1.0);
    const auto e = entanglement(mode_marginal(gs, SectorIndex::make(2, 2), 0), 2);
    CHECK(std::abs(e.normalized - analytic.entanglement.normalized) <= 1e-9);
  }
}
