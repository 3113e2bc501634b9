#include "freqcond/posterior.hpp"

#include "freqcond/errors.hpp"
#include "freqcond/whittle.hpp"

namespace freqcond {

namespace {

std::vector<BigInt> first_transition_counts_row(const FrequencyMatrix& freq,
                                                int i) {
  std::vector<BigInt> counts(static_cast<std::size_t>(freq.size()));
  for (int j = 0; j < freq.size(); ++j)
    counts[static_cast<std::size_t>(j)] = count_first_transition(freq, i, j);
  return counts;
}

// Number of matching walks per head. For a circuit event the heads can admit
// different walk counts (e.g. {(1,1):1,(1,2):1,(2,1):1} has two walks from
// state 1 and one from state 2), and since every matching walk carries the
// same transition weight, the conditional law of Y_1 weights each head by
// this count, not by the initial mass alone.
std::vector<BigInt> head_walk_counts(const FrequencyMatrix& freq) {
  std::vector<BigInt> counts(static_cast<std::size_t>(freq.size()),
                             BigInt(0));
  if (freq.total() == 0) return counts;
  const BalanceReport balance = balance_report(freq);
  if (balance.kind == BalanceKind::Path) {
    counts[static_cast<std::size_t>(balance.head)] =
        whittle_count(freq, balance.head, balance.tail);
  } else if (balance.kind == BalanceKind::Circuit) {
    for (int u : balance.candidate_heads)
      counts[static_cast<std::size_t>(u)] = whittle_count(freq, u, u);
  }
  return counts;
}

}  // namespace

Rational iid_posterior(const IidCounts& counts, long long m) {
  const long long n = counts.total();
  if (n < 1) throw InvalidInputError("iid_posterior: empty counts");
  return make_ratio(counts.count_of(m), n);
}

Rational iid_pair_posterior(const IidCounts& counts, long long m1,
                            long long m2) {
  const long long n = counts.total();
  if (n < 2)
    throw InvalidInputError("iid_pair_posterior: needs at least two draws");
  const long long first = counts.count_of(m1);
  const long long second = counts.count_of(m2) - (m1 == m2 ? 1 : 0);
  if (first <= 0 || second <= 0) return Rational(0);
  return make_ratio(first * second, n * (n - 1));
}

Rational markov_posterior_given_start(const FrequencyMatrix& freq, int i,
                                      int j) {
  if (i < 0 || i >= freq.size() || j < 0 || j >= freq.size())
    throw InvalidInputError("markov_posterior_given_start: state out of range");
  const std::vector<BigInt> counts = first_transition_counts_row(freq, i);
  BigInt denom = 0;
  for (const BigInt& c : counts) denom += c;
  if (denom == 0) return Rational(0);  // {Y_1 = i} disjoint from the event
  return Rational(counts[static_cast<std::size_t>(j)]) / Rational(denom);
}

Rational start_posterior(const FrequencyMatrix& freq,
                         const InitialDistribution& initial, int i) {
  if (initial.size() != freq.size())
    throw InvalidInputError("start_posterior: dimension mismatch");
  if (i < 0 || i >= freq.size())
    throw InvalidInputError("start_posterior: state out of range");
  const std::vector<BigInt> walks = head_walk_counts(freq);
  Rational denom = 0;
  for (int k = 0; k < freq.size(); ++k) {
    if (walks[static_cast<std::size_t>(k)] > 0)
      denom += initial.weight(k) * Rational(walks[static_cast<std::size_t>(k)]);
  }
  if (denom == 0)
    throw NullEventError(
        "start_posterior: no admissible head carries initial mass");
  if (walks[static_cast<std::size_t>(i)] == 0) return Rational(0);
  return initial.weight(i) * Rational(walks[static_cast<std::size_t>(i)]) /
         denom;
}

PosteriorTable markov_posterior(const FrequencyMatrix& freq,
                                const InitialDistribution& initial) {
  if (initial.size() != freq.size())
    throw InvalidInputError("markov_posterior: dimension mismatch");
  const int n_states = freq.size();
  const std::vector<BigInt> walks = head_walk_counts(freq);
  Rational denom = 0;
  for (int k = 0; k < n_states; ++k) {
    if (walks[static_cast<std::size_t>(k)] > 0)
      denom += initial.weight(k) * Rational(walks[static_cast<std::size_t>(k)]);
  }
  if (denom == 0)
    throw NullEventError(
        "markov_posterior: no admissible head carries initial mass");

  PosteriorTable table;
  table.num_states = n_states;
  table.n = freq.total();
  table.entries.assign(
      static_cast<std::size_t>(n_states) * static_cast<std::size_t>(n_states),
      Rational(0));

  for (int i = 0; i < n_states; ++i) {
    if (walks[static_cast<std::size_t>(i)] == 0 || initial.weight(i) == 0)
      continue;
    const std::vector<BigInt> counts = first_transition_counts_row(freq, i);
    BigInt row_total = 0;
    for (const BigInt& c : counts) row_total += c;
    if (row_total != walks[static_cast<std::size_t>(i)])
      throw InternalConsistencyError(
          "markov_posterior: first-transition counts do not add up to the "
          "head walk count for " + canonical_key(freq));
    for (int j = 0; j < n_states; ++j) {
      if (counts[static_cast<std::size_t>(j)] == 0) continue;
      table.at(i, j) = initial.weight(i) *
                       Rational(counts[static_cast<std::size_t>(j)]) / denom;
    }
  }

  Rational sum = 0;
  for (const Rational& p : table.entries) sum += p;
  if (sum != 1)
    throw InternalConsistencyError("markov_posterior: entries sum to " +
                                   to_fraction(sum) + ", not 1");
  return table;
}

}  // namespace freqcond
