#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "freqcond/model.hpp"
#include "freqcond/rational.hpp"

namespace freqcond {

// Brute-force enumeration over the transition multigraph. Deliberately naive:
// this is the ground truth the cofactor formulas are tested against.
//
// Every routine walks the tree of partial chainings by depth-first
// backtracking, visiting children in ascending (i,j) order, and charges one
// unit of the cap per visited partial path. Exceeding the cap raises
// ResourceLimitError; results are never silently truncated.

inline constexpr long long kDefaultEnumerationCap = 10'000'000;

// A sequence of consecutive pairs: the second component of each pair equals
// the first component of the next.
struct ChainString {
  std::vector<std::pair<int, int>> pairs;

  int head() const { return pairs.front().first; }
  int tail() const { return pairs.back().second; }
  bool operator==(const ChainString& other) const = default;
};

// States that can occur at a given trajectory position under the event.
struct AdmissibilitySet {
  int position = 0;  // 1-based, in 1..n+1
  std::vector<int> states;
};

// All distinct chain strings consuming each transition (i,j) exactly nu(i,j)
// times, optionally filtered to a fixed head; lexicographic order.
std::vector<ChainString> enumerate_chain_strings(
    const FrequencyMatrix& freq, std::optional<int> head = std::nullopt,
    long long cap = kDefaultEnumerationCap);

// Number of chain strings with the given head and tail.
BigInt count_paths_brute(const FrequencyMatrix& freq, int u, int v,
                         long long cap = kDefaultEnumerationCap);

// Number of chain strings whose ell-th element (1-based) is (i,j), over all
// heads.
BigInt count_with_term_brute(const FrequencyMatrix& freq, int ell, int i,
                             int j, long long cap = kDefaultEnumerationCap);

// States reachable at position ell (1-based, 1..n+1) by some matching string.
AdmissibilitySet admissible_states_brute(const FrequencyMatrix& freq, int ell,
                                         long long cap = kDefaultEnumerationCap);

// Fraction of distinct value arrangements matching the counts whose ell-th
// entry equals m; each arrangement is equally likely under the conditional
// law. The number of arrangements must not exceed the cap.
Rational iid_conditional_brute(const IidCounts& counts, long long ell,
                               long long m,
                               long long cap = kDefaultEnumerationCap);

}  // namespace freqcond
