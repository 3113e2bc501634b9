#pragma once

#include <vector>

#include "freqcond/model.hpp"
#include "freqcond/rational.hpp"

namespace freqcond {

// Exact conditional law of the first transition given a frequency event.
// Entries are exact rationals and sum to exactly 1; an entry can be positive
// only where nu(i,j) >= 1 and i is an admissible head.
struct PosteriorTable {
  int num_states = 0;
  long long n = 0;  // total transition count of the conditioning event
  std::vector<Rational> entries;  // row-major N*N

  const Rational& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) *
                       static_cast<std::size_t>(num_states) +
                   static_cast<std::size_t>(j)];
  }
  Rational& at(int i, int j) {
    return entries[static_cast<std::size_t>(i) *
                       static_cast<std::size_t>(num_states) +
                   static_cast<std::size_t>(j)];
  }
};

// P(X_ell = m | counts) = nu_m / n, independent of the position ell.
Rational iid_posterior(const IidCounts& counts, long long m);

// P(X_a = m1, X_b = m2 | counts) for two distinct positions a != b:
// nu_{m1} (nu_{m2} - 1{m1=m2}) / (n (n-1)).
Rational iid_pair_posterior(const IidCounts& counts, long long m1,
                            long long m2);

// P(X_1 = (i,j) | event, Y_1 = i): the fraction of head-i chain strings whose
// first element is (i,j). Returns 0 when {Y_1 = i} is disjoint from the event.
Rational markov_posterior_given_start(const FrequencyMatrix& freq, int i,
                                      int j);

// P(Y_1 = i | event). Every walk matching the event carries the same
// transition weight, so the law of the first state weights each admissible
// head by initial mass times the number of walks with that head. (For a path
// event there is a single head; for a circuit event heads can admit different
// walk counts.) Raises NullEventError when every admissible head carries zero
// initial mass.
Rational start_posterior(const FrequencyMatrix& freq,
                         const InitialDistribution& initial, int i);

// P(X_1 = (i,j) | event) = start_posterior(i) * markov_posterior_given_start(i,j).
PosteriorTable markov_posterior(const FrequencyMatrix& freq,
                                const InitialDistribution& initial);

}  // namespace freqcond
