#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace freqcond {

// All combinatorial quantities are exact: arbitrary-precision integers for
// counts and rationals for matrix entries and probabilities. Floating point
// appears only where a value is genuinely a measurement (deviations, Monte
// Carlo estimates).
using BigInt = mpz_class;
using Rational = mpq_class;

BigInt factorial(unsigned long k);

// num/den in canonical form; den must be nonzero.
Rational make_ratio(long long num, long long den);

// Canonical decimal "p" or "p/q" rendering (never floating point).
std::string to_fraction(const Rational& q);
std::string to_decimal(const BigInt& z);
double to_double(const Rational& q);

// Dense square matrix of exact rationals.
class RationalMatrix {
 public:
  explicit RationalMatrix(int size);
  static RationalMatrix identity(int size);

  int size() const { return size_; }
  Rational& at(int row, int col) { return cells_[index(row, col)]; }
  const Rational& at(int row, int col) const { return cells_[index(row, col)]; }

  bool operator==(const RationalMatrix& other) const;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(size_) +
           static_cast<std::size_t>(col);
  }

  int size_;
  std::vector<Rational> cells_;
};

// Determinant by exact Gaussian elimination with partial pivoting.
// det of the empty (0x0) matrix is 1.
Rational determinant(RationalMatrix m);

}  // namespace freqcond
