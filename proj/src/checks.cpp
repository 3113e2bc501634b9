#include "freqcond/checks.hpp"

#include "freqcond/whittle.hpp"

namespace freqcond {

namespace {

void compare_counts(const FrequencyMatrix& freq, long long cap,
                    OracleCheckReport& report) {
  const int n = freq.size();
  ++report.matrices;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const BigInt formula = whittle_count(freq, u, v);
      const BigInt brute = count_paths_brute(freq, u, v, cap);
      ++report.comparisons;
      if (formula != brute) {
        ++report.mismatches;
        if (report.examples.size() < 10)
          report.examples.push_back(
              "count " + canonical_key(freq) + " u=" + std::to_string(u + 1) +
              " v=" + std::to_string(v + 1) + ": formula " +
              to_decimal(formula) + " vs brute " + to_decimal(brute));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const BigInt formula = count_first_transition(freq, i, j);
      const BigInt brute = count_with_term_brute(freq, 1, i, j, cap);
      ++report.comparisons;
      if (formula != brute) {
        ++report.mismatches;
        if (report.examples.size() < 10)
          report.examples.push_back(
              "first " + canonical_key(freq) + " i=" + std::to_string(i + 1) +
              " j=" + std::to_string(j + 1) + ": formula " +
              to_decimal(formula) + " vs brute " + to_decimal(brute));
      }
    }
  }
}

}  // namespace

void for_each_frequency_matrix(
    int num_states, long long total,
    const std::function<void(const FrequencyMatrix&)>& fn) {
  FrequencyMatrix freq(num_states);
  const int cells = num_states * num_states;

  auto rec = [&](auto&& self, int cell, long long remaining) -> void {
    if (cell == cells - 1) {
      freq.set(cell / num_states, cell % num_states, remaining);
      fn(freq);
      freq.set(cell / num_states, cell % num_states, 0);
      return;
    }
    for (long long c = 0; c <= remaining; ++c) {
      freq.set(cell / num_states, cell % num_states, c);
      self(self, cell + 1, remaining - c);
    }
    freq.set(cell / num_states, cell % num_states, 0);
  };
  rec(rec, 0, total);
}

FrequencyMatrix random_frequency_matrix(int num_states, long long total,
                                        SplitMix64& rng) {
  FrequencyMatrix freq(num_states);
  const std::uint64_t cells =
      static_cast<std::uint64_t>(num_states) *
      static_cast<std::uint64_t>(num_states);
  for (long long t = 0; t < total; ++t) {
    const std::uint64_t cell = rng.next() % cells;
    freq.bump(static_cast<int>(cell) / num_states,
              static_cast<int>(cell) % num_states);
  }
  return freq;
}

FrequencyMatrix random_trajectory_frequency(int num_states, int steps,
                                            SplitMix64& rng) {
  Trajectory traj;
  traj.num_states = num_states;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  int state = static_cast<int>(rng.next() % static_cast<std::uint64_t>(num_states));
  traj.states.push_back(state);
  for (int k = 0; k < steps; ++k) {
    state = static_cast<int>(rng.next() % static_cast<std::uint64_t>(num_states));
    traj.states.push_back(state);
  }
  return frequency_of_trajectory(traj);
}

OracleCheckReport check_counts_exhaustive(int max_states, long long max_total,
                                          long long cap) {
  OracleCheckReport report;
  for (int n = 1; n <= max_states; ++n) {
    for (long long total = 1; total <= max_total; ++total) {
      for_each_frequency_matrix(n, total, [&](const FrequencyMatrix& freq) {
        compare_counts(freq, cap, report);
      });
    }
  }
  return report;
}

OracleCheckReport check_counts_random(int num_states, long long max_total,
                                      int samples, std::uint64_t seed,
                                      long long cap) {
  OracleCheckReport report;
  SplitMix64 rng(mix64(seed));
  for (int s = 0; s < samples; ++s) {
    const long long total =
        1 + static_cast<long long>(rng.next() %
                                   static_cast<std::uint64_t>(max_total));
    const FrequencyMatrix freq =
        (s % 2 == 0)
            ? random_trajectory_frequency(num_states, static_cast<int>(total),
                                          rng)
            : random_frequency_matrix(num_states, total, rng);
    compare_counts(freq, cap, report);
  }
  return report;
}

}  // namespace freqcond
