#ifndef ARIMLE_TESTS_TEST_UTIL_H_
#define ARIMLE_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arimle/types.h"

namespace arimle::testing {

inline std::vector<std::string> Ids(std::size_t m) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < m; ++i) ids.push_back("f" + std::to_string(i));
  return ids;
}

inline PredictionMatrix FromGrid(const std::vector<std::vector<int>>& grid) {
  return PredictionMatrix::Validate(grid, Ids(grid.front().size()));
}

// Uniformly random +-1 matrix for property tests.
inline PredictionMatrix RandomMatrix(std::size_t n, std::size_t m,
                                     std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<std::vector<int>> grid(n, std::vector<int>(m));
  for (auto& row : grid) {
    for (int& v : row) v = (rng() & 1u) ? 1 : -1;
  }
  return FromGrid(grid);
}

inline std::vector<std::vector<int>> Columns(
    const std::vector<std::vector<int>>& columns) {
  std::vector<std::vector<int>> grid(columns.front().size(),
                                     std::vector<int>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (std::size_t j = 0; j < columns[i].size(); ++j) {
      grid[j][i] = columns[i][j];
    }
  }
  return grid;
}

}  // namespace arimle::testing

#endif  // ARIMLE_TESTS_TEST_UTIL_H_
