#include "freqcond/whittle.hpp"

#include "freqcond/errors.hpp"

namespace freqcond {

RationalMatrix whittle_matrix(const FrequencyMatrix& freq) {
  const int n = freq.size();
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const long long row = freq.row_sum(i);
    for (int j = 0; j < n; ++j) {
      Rational v = (i == j) ? 1 : 0;
      if (row > 0) v -= make_ratio(freq.at(i, j), row);
      m.at(i, j) = v;
    }
  }
  return m;
}

RationalMatrix whittle_matrix_after_first(const FrequencyMatrix& freq, int i,
                                          int j) {
  if (freq.at(i, j) < 1)
    throw InvalidInputError(
        "whittle_matrix_after_first: the (i,j) cell is empty");
  const int n = freq.size();
  RationalMatrix m(n);
  for (int ti = 0; ti < n; ++ti) {
    const long long row = freq.row_sum(ti);
    for (int tj = 0; tj < n; ++tj) {
      Rational v;
      if (ti == i) {
        if (row > 1) {
          if (tj == j) {
            v = Rational((i == j) ? 1 : 0) -
                make_ratio(freq.at(i, j) - 1, row - 1);
          } else {
            v = Rational((i == tj) ? 1 : 0) -
                make_ratio(freq.at(i, tj), row - 1);
          }
        } else {
          // row == 1 and nu(i,j) == 1: the decremented row is empty.
          v = (i == tj) ? 1 : 0;
        }
      } else {
        v = (ti == tj) ? 1 : 0;
        if (row > 0) v -= make_ratio(freq.at(ti, tj), row);
      }
      m.at(ti, tj) = v;
    }
  }
  return m;
}

Rational cofactor(const RationalMatrix& m, int row, int col) {
  const int n = m.size();
  if (row < 0 || row >= n || col < 0 || col >= n)
    throw InvalidInputError("cofactor: index out of range");
  RationalMatrix minor(n - 1);
  for (int r = 0, mr = 0; r < n; ++r) {
    if (r == row) continue;
    for (int c = 0, mc = 0; c < n; ++c) {
      if (c == col) continue;
      minor.at(mr, mc) = m.at(r, c);
      ++mc;
    }
    ++mr;
  }
  Rational d = determinant(std::move(minor));
  return ((row + col) % 2 == 0) ? d : Rational(-d);
}

BigInt multinomial_weight(const FrequencyMatrix& freq) {
  BigInt weight = 1;
  for (int i = 0; i < freq.size(); ++i) {
    BigInt row = factorial(static_cast<unsigned long>(freq.row_sum(i)));
    for (int j = 0; j < freq.size(); ++j)
      row /= factorial(static_cast<unsigned long>(freq.at(i, j)));
    weight *= row;
  }
  return weight;
}

BigInt whittle_count(const FrequencyMatrix& freq, int u, int v) {
  if (u < 0 || u >= freq.size() || v < 0 || v >= freq.size())
    throw InvalidInputError("whittle_count: state out of range");
  if (freq.total() == 0) return (u == v) ? 1 : 0;  // the empty walk

  const BalanceReport balance = balance_report(freq);
  switch (balance.kind) {
    case BalanceKind::Infeasible:
      return 0;
    case BalanceKind::Path:
      if (u != balance.head || v != balance.tail) return 0;
      break;
    case BalanceKind::Circuit:
      if (u != v || freq.row_sum(u) == 0) return 0;
      break;
  }

  const Rational cof = cofactor(whittle_matrix(freq), v, u);
  if (cof == 0) return 0;
  Rational product = Rational(multinomial_weight(freq)) * cof;
  if (product.get_den() != 1 || product < 0)
    throw InternalConsistencyError(
        "whittle_count: product is not a nonnegative integer for " +
        canonical_key(freq));
  return product.get_num();
}

BigInt count_first_transition(const FrequencyMatrix& freq, int i, int j) {
  if (i < 0 || i >= freq.size() || j < 0 || j >= freq.size())
    throw InvalidInputError("count_first_transition: state out of range");
  if (freq.at(i, j) < 1) return 0;

  const BalanceReport balance = balance_report(freq);
  int tail;
  if (balance.kind == BalanceKind::Infeasible) return 0;
  if (balance.kind == BalanceKind::Path) {
    if (i != balance.head) return 0;
    tail = balance.tail;
  } else {
    tail = i;  // closed walk: the tail is the head itself
  }

  // Route one: strip the first transition and count head-j walks.
  const FrequencyMatrix rest = freq.decremented(i, j);
  const BigInt stripped =
      (rest.total() == 0) ? BigInt((j == tail) ? 1 : 0)
                          : whittle_count(rest, j, tail);

  // Route two: closed-form rescaling of the full head-i count.
  const BigInt full = whittle_count(freq, i, tail);
  BigInt closed = 0;
  if (full > 0) {
    const Rational cof_full = cofactor(whittle_matrix(freq), tail, i);
    const Rational cof_rest =
        cofactor(whittle_matrix_after_first(freq, i, j), tail, j);
    Rational value = make_ratio(freq.at(i, j), freq.row_sum(i)) *
                     Rational(full) * cof_rest / cof_full;
    if (value.get_den() != 1 || value < 0)
      throw InternalConsistencyError(
          "count_first_transition: closed form is not a nonnegative integer "
          "for " + canonical_key(freq));
    closed = value.get_num();
  }

  if (stripped != closed)
    throw InternalConsistencyError(
        "count_first_transition: the two computation routes disagree (" +
        to_decimal(stripped) + " vs " + to_decimal(closed) + ") for " +
        canonical_key(freq));
  return stripped;
}

bool cofactor_row_constancy(const FrequencyMatrix& freq) {
  const int n = freq.size();
  for (int i = 0; i < n; ++i) {
    if (freq.row_sum(i) == 0)
      throw PreconditionError(
          "cofactor_row_constancy: row " + std::to_string(i + 1) +
          " has no transitions");
  }
  const RationalMatrix m = whittle_matrix(freq);
  for (int v = 0; v < n; ++v) {
    const Rational first = cofactor(m, v, 0);
    for (int i = 1; i < n; ++i) {
      if (cofactor(m, v, i) != first) return false;
    }
  }
  return true;
}

std::vector<int> admissible_heads_whittle(const FrequencyMatrix& freq) {
  std::vector<int> heads;
  if (freq.total() == 0) return heads;
  const BalanceReport balance = balance_report(freq);
  if (balance.kind == BalanceKind::Path) {
    if (whittle_count(freq, balance.head, balance.tail) > 0)
      heads.push_back(balance.head);
  } else if (balance.kind == BalanceKind::Circuit) {
    for (int u : balance.candidate_heads) {
      if (whittle_count(freq, u, u) > 0) heads.push_back(u);
    }
  }
  return heads;
}

}  // namespace freqcond
