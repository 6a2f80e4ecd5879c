#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bosegraph {

// Boson counts per vertex; one Fock basis state of a fixed-N sector.
using Occupation = std::vector<int>;

namespace detail {

// Binomial coefficient with hard overflow check. Results must stay below
// 2^63; anything larger aborts the computation instead of wrapping.
inline std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") exceeds 63-bit range");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace detail

// Number of ways to put N bosons on L modes: binomial(N+L-1, N).
inline std::uint64_t sector_dimension(int num_modes, int num_particles) {
  if (num_modes < 1) throw std::invalid_argument("sector_dimension: need L >= 1");
  if (num_particles < 0) throw std::invalid_argument("sector_dimension: need N >= 0");
  return detail::checked_binomial(
      static_cast<std::uint64_t>(num_particles) + num_modes - 1,
      static_cast<std::uint64_t>(num_particles));
}

// Identifies one fixed-particle-number Fock sector.
struct SectorIndex {
  int num_modes = 1;
  int num_particles = 0;
  std::uint64_t dimension = 1;

  static SectorIndex make(int num_modes, int num_particles) {
    return {num_modes, num_particles, sector_dimension(num_modes, num_particles)};
  }
};

inline void check_occupation(const Occupation& occ, const SectorIndex& sector) {
  if (static_cast<int>(occ.size()) != sector.num_modes)
    throw std::invalid_argument("occupation length does not match sector");
  long long total = 0;
  for (int n : occ) {
    if (n < 0) throw std::invalid_argument("negative occupation");
    total += n;
  }
  if (total != sector.num_particles)
    throw std::invalid_argument("occupation total does not match sector N");
}

// Index of occ under ascending lexicographic order of (n_0, ..., n_{L-1}).
// Combinatorial number system; closed form, O(L).
inline std::uint64_t rank_occupation(const Occupation& occ, const SectorIndex& sector) {
  check_occupation(occ, sector);
  std::uint64_t r = 0;
  int remaining = sector.num_particles;
  for (int i = 0; i + 1 < sector.num_modes; ++i) {
    const int tail_modes = sector.num_modes - i - 1;
    // states with a smaller count at position i, summed in closed form
    r += detail::checked_binomial(remaining + tail_modes, tail_modes) -
         detail::checked_binomial(remaining - occ[i] + tail_modes, tail_modes);
    remaining -= occ[i];
  }
  return r;
}

// Inverse of rank_occupation.
inline Occupation unrank_occupation(std::uint64_t index, const SectorIndex& sector) {
  if (index >= sector.dimension)
    throw std::out_of_range("unrank_occupation: index past sector dimension");
  Occupation occ(sector.num_modes, 0);
  int remaining = sector.num_particles;
  for (int i = 0; i + 1 < sector.num_modes; ++i) {
    const int tail_modes = sector.num_modes - i - 1;
    int n = 0;
    for (;; ++n) {
      const std::uint64_t block = sector_dimension(tail_modes, remaining - n);
      if (index < block) break;
      index -= block;
    }
    occ[i] = n;
    remaining -= n;
  }
  occ[sector.num_modes - 1] = remaining;
  return occ;
}

// Visits every basis state of the sector in ascending lexicographic order.
// The callback receives (rank, occupation).
template <typename F>
void for_each_state(const SectorIndex& sector, F&& fn) {
  Occupation occ(sector.num_modes, 0);
  occ.back() = sector.num_particles;
  for (std::uint64_t k = 0;; ++k) {
    fn(k, static_cast<const Occupation&>(occ));
    // lexicographic successor: bump the slot left of the last nonzero one,
    // then park the remainder in the final slot
    int last = sector.num_modes - 1;
    while (last >= 0 && occ[last] == 0) --last;
    if (last <= 0) break;
    const int carry = occ[last] - 1;
    occ[last] = 0;
    occ[last - 1] += 1;
    occ[sector.num_modes - 1] = carry;
  }
}

// Action of b_i^dagger b_j on a number state. Empty when occ[j] == 0,
// otherwise the shifted state and matrix element sqrt((occ[i]+1) * occ[j]).
inline std::optional<std::pair<Occupation, double>> hop_apply(const Occupation& occ,
                                                              int i, int j) {
  if (i == j) throw std::invalid_argument("hop_apply: i == j (use occupation directly)");
  if (i < 0 || j < 0 || i >= static_cast<int>(occ.size()) ||
      j >= static_cast<int>(occ.size()))
    throw std::out_of_range("hop_apply: vertex out of range");
  if (occ[j] == 0) return std::nullopt;
  Occupation out = occ;
  out[j] -= 1;
  out[i] += 1;
  const double amplitude = std::sqrt(static_cast<double>(occ[i] + 1) * occ[j]);
  return std::make_pair(std::move(out), amplitude);
}

}  // namespace bosegraph
