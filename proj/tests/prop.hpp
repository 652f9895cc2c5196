#pragma once

#include <gtest/gtest.h>

#include <random>

namespace fgtest {

/// Runs body(rng) for `cases` draws from a fixed-seed generator, tagging
/// failures with the case index.
template <class Body>
void for_all(int cases, unsigned seed, Body body) {
  std::mt19937 rng(seed);
  for (int i = 0; i < cases; ++i) {
    SCOPED_TRACE(testing::Message() << "case " << i << " seed " << seed);
    body(rng);
    if (testing::Test::HasFatalFailure()) return;
  }
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace fgtest
