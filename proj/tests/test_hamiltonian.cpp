#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "bosegraph/hamiltonian.hpp"

using namespace bosegraph;

TEST_CASE("dimer N=2 matrix by hand") {
  // basis order: (0,2), (1,1), (2,0)
  const SectorHamiltonian h(complete_graph(2), 2, Couplings(1.0, 1.0));
  REQUIRE(h.dimension() == 3);
  CHECK(h.diagonal() == std::vector<double>{4.0, 2.0, 4.0});
  const auto m = h.dense();
  CHECK_THAT(m(0, 1), Catch::Matchers::WithinAbs(-std::sqrt(2.0), 1e-15));
  CHECK_THAT(m(1, 2), Catch::Matchers::WithinAbs(-std::sqrt(2.0), 1e-15));
  CHECK(m(0, 2) == 0.0);
  CHECK(m.isApprox(m.transpose()));
}

TEST_CASE("tau = 0 gives a purely diagonal matrix") {
  const SectorHamiltonian h(catalog_graph(7), 4, Couplings(0.0, 1.0));
  CHECK(h.offdiagonal_count() == 0);
  // matvec on a basis vector returns the diagonal entry
  std::vector<double> e(h.dimension(), 0.0);
  e[5] = 1.0;
  const auto y = h.matvec(e);
  for (std::uint64_t k = 0; k < h.dimension(); ++k)
    CHECK(y[k] == (k == 5 ? h.diagonal()[5] : 0.0));
}

TEST_CASE("star graph row for the fully stacked state") {
  // state (4,0,0,0): three hops off the root, each amplitude sqrt(4*1) = 2
  const auto g = catalog_graph(10);
  const SectorHamiltonian h(g, 4, Couplings(1.0, 0.0));
  const auto sector = h.sector();
  const auto m = h.dense();
  const auto row = rank_occupation({4, 0, 0, 0}, sector);
  int nonzeros = 0;
  for (std::uint64_t c = 0; c < h.dimension(); ++c)
    if (c != row && m(row, c) != 0.0) {
      ++nonzeros;
      CHECK_THAT(m(row, c), Catch::Matchers::WithinAbs(-2.0, 1e-15));
    }
  CHECK(nonzeros == 3);
}

TEST_CASE("matvec examples") {
  const SectorHamiltonian h(complete_graph(2), 2, Couplings(1.0, 1.0));
  const auto y = h.matvec({0.0, 1.0, 0.0});
  CHECK_THAT(y[0], Catch::Matchers::WithinAbs(-std::sqrt(2.0), 1e-15));
  CHECK_THAT(y[1], Catch::Matchers::WithinAbs(2.0, 1e-15));
  CHECK_THAT(y[2], Catch::Matchers::WithinAbs(-std::sqrt(2.0), 1e-15));

  CHECK(h.matvec({0.0, 0.0, 0.0}) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(h.matvec({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("matvec is symmetric: <y, Hx> == <Hy, x>") {
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  for (int id : {5, 9, 13}) {
    const SectorHamiltonian h(catalog_graph(id), 4, Couplings(1.7, 0.9));
    std::vector<double> x(h.dimension()), y(h.dimension());
    for (auto& v : x) v = gauss(rng);
    for (auto& v : y) v = gauss(rng);
    const auto hx = h.matvec(x);
    const auto hy = h.matvec(y);
    double lhs = 0.0, rhs = 0.0, scale = 0.0;
    for (std::uint64_t k = 0; k < h.dimension(); ++k) {
      lhs += y[k] * hx[k];
      rhs += hy[k] * x[k];
      scale += std::abs(y[k] * hx[k]);
    }
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("off-diagonal entries are uniformly negative for tau > 0") {
  const SectorHamiltonian h(catalog_graph(9), 4, Couplings(2.0, 1.0));
  const auto m = h.dense();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (r != c) CHECK(m(r, c) <= 0.0);
  CHECK(h.offdiagonal_count() > 0);
}

TEST_CASE("coupling scaling: H(a tau, a eps) == a H(tau, eps)") {
  const auto g = catalog_graph(8);
  const double a = 3.5;
  const auto m1 = SectorHamiltonian(g, 4, Couplings(1.3, 0.7)).dense();
  const auto m2 = SectorHamiltonian(g, 4, Couplings(a * 1.3, a * 0.7)).dense();
  CHECK((m2 - a * m1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("per-row off-diagonal count is bounded by twice the edge count") {
  const auto g = catalog_graph(13);
  const SectorHamiltonian h(g, 4, Couplings(1.0, 1.0));
  const auto m = h.dense();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    int count = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (r != c && m(r, c) != 0.0) ++count;
    CHECK(count <= 2 * static_cast<int>(g.edges.size()));
  }
}

TEST_CASE("coupling validation") {
  CHECK_THROWS_AS(Couplings(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Couplings(1.0, -0.5), std::invalid_argument);
}
