#pragma once

#include <vector>

#include "freqcond/model.hpp"
#include "freqcond/rational.hpp"

namespace freqcond {

// Exact polynomial-time counting of chain strings via Whittle's cofactor
// formula (Whittle 1955): the number of walks with head u, tail v and
// transition counts nu equals
//
//   [ prod_i (row_sum_i)! / prod_{i,j} nu(i,j)! ] * cofactor(W, v, u)
//
// where W is the normalized count matrix built by whittle_matrix. All
// arithmetic is exact; a non-integer or negative product signals a bug and is
// surfaced as InternalConsistencyError.

// W(i,j) = 1{i=j} - nu(i,j)/row_sum(i) when row i is nonempty, 1{i=j} otherwise.
RationalMatrix whittle_matrix(const FrequencyMatrix& freq);

// The same matrix after consuming one (i,j) transition: row i is renormalized
// with the (i,j) cell and the row total both reduced by one; other rows are
// unchanged. Equals whittle_matrix(freq.decremented(i, j)). Requires
// nu(i,j) >= 1.
RationalMatrix whittle_matrix_after_first(const FrequencyMatrix& freq, int i,
                                          int j);

// (-1)^{row+col} times the determinant of m with the row and column deleted.
Rational cofactor(const RationalMatrix& m, int row, int col);

// prod_i (row_sum_i)! / prod_{i,j} nu(i,j)!
BigInt multinomial_weight(const FrequencyMatrix& freq);

// Number of chain strings with head u and tail v. Pairs (u,v) not admitted by
// the flow balance count as 0. An all-zero matrix counts the empty walk:
// 1 if u == v, else 0.
BigInt whittle_count(const FrequencyMatrix& freq, int u, int v);

// Number of chain strings whose first element is (i,j). Computed two ways
// that must agree exactly: by decrementing the (i,j) cell and counting
// head-j walks, and by the closed-form ratio of cofactors; disagreement
// raises InternalConsistencyError. Returns 0 when nu(i,j) = 0 or the balance
// rules out head i.
BigInt count_first_transition(const FrequencyMatrix& freq, int i, int j);

// True iff within every row v the cofactors cofactor(W, v, i) are equal for
// all columns i. Holds whenever every row sum of freq is positive; requiring
// that precondition, a zero row raises PreconditionError.
bool cofactor_row_constancy(const FrequencyMatrix& freq);

// Heads u with at least one matching chain string, determined from the
// balance-compatible tails. Scalable replacement for
// admissible_states_brute(freq, 1).
std::vector<int> admissible_heads_whittle(const FrequencyMatrix& freq);

}  // namespace freqcond
