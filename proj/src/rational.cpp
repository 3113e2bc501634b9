#include "freqcond/rational.hpp"

#include "freqcond/errors.hpp"

namespace freqcond {

static_assert(sizeof(long) == 8, "counts are stored as 64-bit integers");

BigInt factorial(unsigned long k) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

Rational make_ratio(long long num, long long den) {
  if (den == 0) throw InvalidInputError("make_ratio: zero denominator");
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

std::string to_fraction(const Rational& q) { return q.get_str(); }

std::string to_decimal(const BigInt& z) { return z.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

RationalMatrix::RationalMatrix(int size)
    : size_(size),
      cells_(static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {
  if (size < 0) throw InvalidInputError("RationalMatrix: negative size");
}

RationalMatrix RationalMatrix::identity(int size) {
  RationalMatrix m(size);
  for (int i = 0; i < size; ++i) m.at(i, i) = 1;
  return m;
}

bool RationalMatrix::operator==(const RationalMatrix& other) const {
  if (size_ != other.size_) return false;
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    if (cells_[k] != other.cells_[k]) return false;
  }
  return true;
}

Rational determinant(RationalMatrix m) {
  const int n = m.size();
  Rational result = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    Rational best = 0;
    for (int row = col; row < n; ++row) {
      Rational a = abs(m.at(row, col));
      if (a > best) {
        best = a;
        pivot = row;
      }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      for (int c = col; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
      result = -result;
    }
    const Rational p = m.at(col, col);
    result *= p;
    for (int row = col + 1; row < n; ++row) {
      if (m.at(row, col) == 0) continue;
      Rational f = m.at(row, col) / p;
      for (int c = col + 1; c < n; ++c) m.at(row, c) -= f * m.at(col, c);
      m.at(row, col) = 0;
    }
  }
  return result;
}

}  // namespace freqcond
