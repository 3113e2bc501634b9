#pragma once

#include <initializer_list>
#include <tuple>
#include <vector>

#include "freqcond/model.hpp"

namespace freqcond::test {

// Builders taking 1-based state labels, matching the worked examples.

inline FrequencyMatrix freq_labeled(
    int num_states,
    std::initializer_list<std::tuple<int, int, long long>> cells) {
  FrequencyMatrix freq(num_states);
  for (const auto& [i, j, count] : cells) freq.set(i - 1, j - 1, count);
  return freq;
}

inline Trajectory traj_labeled(int num_states, std::initializer_list<int> y) {
  Trajectory traj;
  traj.num_states = num_states;
  for (int label : y) traj.states.push_back(label - 1);
  return traj;
}

inline IidCounts counts_of(
    std::initializer_list<std::pair<long long, long long>> entries) {
  IidCounts counts;
  for (const auto& [value, count] : entries) counts.counts[value] = count;
  return counts;
}

inline InitialDistribution uniform_initial(int num_states) {
  std::vector<Rational> weights(static_cast<std::size_t>(num_states),
                                make_ratio(1, num_states));
  return InitialDistribution::from_rationals(std::move(weights));
}

}  // namespace freqcond::test
