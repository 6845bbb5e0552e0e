#pragma once

#include <array>
#include <cstdint>

namespace sure_search {

/// Partition of an N = K*b element database into K blocks of size b,
/// together with the three rotation angles derived from it:
///   sin^2(theta_g) = 1/N, sin^2(theta_l) = 1/b, sin^2(gamma) = 1/K.
struct SearchGeometry {
  std::int64_t blocks = 0;      // K
  std::int64_t block_size = 0;  // b
  std::int64_t size = 0;        // N
  double theta_g = 0.0;
  double theta_l = 0.0;
  double gamma = 0.0;

  friend bool operator==(const SearchGeometry&, const SearchGeometry&) = default;
};

/// Throws std::domain_error naming the offending parameter when
/// blocks < 2 or block_size < 2 (or when K*b overflows).
SearchGeometry make_geometry(std::int64_t blocks, std::int64_t block_size);

/// Real-valued iteration counts that would zero the remainder amplitude
/// in the large-database limit.
struct IdealCounts {
  double local = 0.0;   // j_l
  double global = 0.0;  // j_g
};

IdealCounts ideal_counts(const SearchGeometry& g);

struct CountPair {
  std::int64_t local = 0;
  std::int64_t global = 0;

  friend bool operator==(const CountPair&, const CountPair&) = default;
};

inline constexpr int kMaxGlobalOffset = 2;

/// (floor j_l, floor j_g + offset) for offset = 0, 1, 2, in that order.
std::array<CountPair, kMaxGlobalOffset + 1> candidate_counts(const IdealCounts& ideal);

}  // namespace sure_search
