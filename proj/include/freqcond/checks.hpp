#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "freqcond/enumerate.hpp"
#include "freqcond/model.hpp"
#include "freqcond/rng.hpp"

namespace freqcond {

// Equivalence suite between the cofactor-formula counts and the brute-force
// enumeration, over exhaustive and randomized families of count matrices.

// Calls fn with every N x N count matrix whose entries sum to total.
void for_each_frequency_matrix(
    int num_states, long long total,
    const std::function<void(const FrequencyMatrix&)>& fn);

// total transitions thrown uniformly into the N*N cells.
FrequencyMatrix random_frequency_matrix(int num_states, long long total,
                                        SplitMix64& rng);

// Counts of a uniform random walk with the given number of steps; always
// chainable by construction.
FrequencyMatrix random_trajectory_frequency(int num_states, int steps,
                                            SplitMix64& rng);

struct OracleCheckReport {
  std::uint64_t matrices = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::string> examples;  // first few mismatch descriptions

  bool all_agree() const { return mismatches == 0; }
};

// Compares whittle_count against count_paths_brute on every (u,v) and
// count_first_transition against count_with_term_brute at position 1 on
// every (i,j), for all matrices with N <= max_states and 1 <= n <= max_total.
OracleCheckReport check_counts_exhaustive(
    int max_states, long long max_total,
    long long cap = kDefaultEnumerationCap);

// Same comparisons on seeded random matrices with the given state count and
// totals in 1..max_total. Alternates walk-derived (always chainable) and
// unconstrained matrices.
OracleCheckReport check_counts_random(int num_states, long long max_total,
                                      int samples, std::uint64_t seed,
                                      long long cap = kDefaultEnumerationCap);

}  // namespace freqcond
