#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>

#ifndef SISS_TEST_DATA_DIR
#define SISS_TEST_DATA_DIR "."
#endif

namespace siss::test {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline std::filesystem::path data_path(const char* name) {
  return std::filesystem::path(SISS_TEST_DATA_DIR) / name;
}

}  // namespace siss::test
