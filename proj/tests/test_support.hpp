#pragma once

#include <complex>
#include <filesystem>
#include <initializer_list>
#include <string>

#include "su6/algebra.hpp"

namespace su6::test {

inline std::filesystem::path source_dir() { return SU6_SOURCE_DIR; }
inline std::filesystem::path data_dir() { return source_dir() / "data"; }

/// Fresh scratch directory for one test.
inline std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::path(SU6_SCRATCH_DIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Row-major complex matrix literal.
inline ComplexMatrix matrix(int rows, int cols, std::initializer_list<Complex> values) {
  ComplexMatrix m(rows, cols);
  auto it = values.begin();
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = *it++;
  return m;
}

inline constexpr Complex I{0.0, 1.0};

} // namespace su6::test
