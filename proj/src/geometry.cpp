#include "sure_search/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sure_search {

SearchGeometry make_geometry(std::int64_t blocks, std::int64_t block_size) {
  if (blocks < 2) {
    throw std::domain_error("number of blocks K must be >= 2, got " + std::to_string(blocks));
  }
  if (block_size < 2) {
    throw std::domain_error("block size b must be >= 2, got " + std::to_string(block_size));
  }
  if (blocks > std::numeric_limits<std::int64_t>::max() / block_size) {
    throw std::domain_error("database size K*b overflows");
  }

  SearchGeometry g;
  g.blocks = blocks;
  g.block_size = block_size;
  g.size = blocks * block_size;
  g.theta_g = std::asin(1.0 / std::sqrt(static_cast<double>(g.size)));
  g.theta_l = std::asin(1.0 / std::sqrt(static_cast<double>(block_size)));
  g.gamma = std::asin(1.0 / std::sqrt(static_cast<double>(blocks)));
  return g;
}

IdealCounts ideal_counts(const SearchGeometry& g) {
  const auto k = static_cast<double>(g.blocks);
  // cos(2 j_l theta_l) = (K-2) / (2(K-1)),  tan(2 j_g theta_g) = (K-2) / sqrt(3K-4)
  const double local_cos = (k - 2.0) / (2.0 * (k - 1.0));
  const double global_tan = (k - 2.0) / std::sqrt(3.0 * k - 4.0);
  return IdealCounts{
      .local = std::acos(local_cos) / (2.0 * g.theta_l),
      .global = std::atan(global_tan) / (2.0 * g.theta_g),
  };
}

std::array<CountPair, kMaxGlobalOffset + 1> candidate_counts(const IdealCounts& ideal) {
  const auto local = static_cast<std::int64_t>(std::floor(std::max(ideal.local, 0.0)));
  const auto global = static_cast<std::int64_t>(std::floor(std::max(ideal.global, 0.0)));
  std::array<CountPair, kMaxGlobalOffset + 1> out;
  for (int offset = 0; offset <= kMaxGlobalOffset; ++offset) {
    out[static_cast<std::size_t>(offset)] = CountPair{local, global + offset};
  }
  return out;
}

}  // namespace sure_search
