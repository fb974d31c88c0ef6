#pragma once

#include <random>
#include <vector>

#include "nonlocal/grid.hpp"

namespace testing {

inline nonlocal::Grid line(double lo, double hi, std::size_t n, double T = 1.0, std::size_t M = 1) {
  const std::vector<nonlocal::Interval> ext{{lo, hi}};
  const std::vector<std::size_t> counts{n};
  return nonlocal::Grid::build(ext, counts, T, M);
}

inline nonlocal::Grid rect(nonlocal::Interval a, nonlocal::Interval b, std::size_t n0, std::size_t n1,
                           double T = 1.0, std::size_t M = 1) {
  const std::vector<nonlocal::Interval> ext{a, b};
  const std::vector<std::size_t> counts{n0, n1};
  return nonlocal::Grid::build(ext, counts, T, M);
}

inline nonlocal::Field random_field(std::size_t n, std::mt19937_64& rng, double lo = -1.0,
                                    double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  nonlocal::Field f(n);
  for (double& v : f) v = d(rng);
  return f;
}

}  // namespace testing
