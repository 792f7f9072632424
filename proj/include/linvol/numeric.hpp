#pragma once

#include <gmpxx.h>
#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace linvol {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Extended-precision float used for cocycle frames (113-bit mantissa).
using Extended = __float128;

inline Extended xlog(Extended x) { return logq(x); }
inline Extended xsqrt(Extended x) { return sqrtq(x); }
inline Extended xabs(Extended x) { return x < 0 ? -x : x; }
inline Extended xfloor(Extended x) { return floorq(x); }
inline long double xfloor(long double x) { return std::floor(x); }
inline double xfloor(double x) { return std::floor(x); }
inline long double xlog(long double x) { return std::log(x); }
inline long double xsqrt(long double x) { return std::sqrt(x); }
inline long double xabs(long double x) { return std::fabs(x); }
inline double xlog(double x) { return std::log(x); }
inline double xsqrt(double x) { return std::sqrt(x); }
inline double xabs(double x) { return std::fabs(x); }

/// Parses "7", "-3/4" or "1.25" into an exact rational.
inline Rational parseRational(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw ParseError("empty number");
  auto dot = s.find('.');
  Rational r;
  try {
    if (dot == std::string::npos) {
      r = Rational(s, 10);
    } else {
      std::string intPart = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool negative = !intPart.empty() && intPart[0] == '-';
      if (negative) intPart = intPart.substr(1);
      if (intPart.empty()) intPart = "0";
      if (frac.find_first_not_of("0123456789") != std::string::npos ||
          intPart.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("malformed decimal '" + text + "'");
      BigInt num(intPart + frac, 10);
      BigInt den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      r = Rational(num, den);
      if (negative) r = -r;
    }
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed number '" + text + "'");
  }
  r.canonicalize();
  return r;
}

inline std::string toString(const Rational& r) { return r.get_str(); }
inline std::string toString(const BigInt& z) { return z.get_str(); }

/// Decimal rendering of a rational with `digits` digits after the point
/// (truncated toward zero).
inline std::string toDecimal(const Rational& r, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::max(0, digits)));
  Rational a = abs(r);
  BigInt scaled = a.get_num() * scale / a.get_den();
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string out = (r < 0 && scaled != 0) ? "-" : "";
  out += whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

inline long double toLongDouble(const Rational& r) {
  // mpq_get_d loses range for huge numerators; go through the ratio of the
  // leading bits instead.
  if (r == 0) return 0.0L;
  long numExp = 0, denExp = 0;
  double n = mpz_get_d_2exp(&numExp, r.get_num_mpz_t());
  double d = mpz_get_d_2exp(&denExp, r.get_den_mpz_t());
  return std::ldexp(static_cast<long double>(n) / d, static_cast<int>(numExp - denExp));
}

/// Natural log of a positive rational, accurate for arbitrarily large
/// numerators and denominators.
inline long double logRational(const Rational& r) {
  long numExp = 0, denExp = 0;
  double n = mpz_get_d_2exp(&numExp, r.get_num_mpz_t());
  double d = mpz_get_d_2exp(&denExp, r.get_den_mpz_t());
  return std::log(static_cast<long double>(n) / d) +
         static_cast<long double>(numExp - denExp) * std::log(2.0L);
}

/// Dense square matrix over arbitrary-precision integers.
class BigMatrix {
 public:
  BigMatrix() = default;
  explicit BigMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}

  static BigMatrix identity(std::size_t n) {
    BigMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  BigMatrix transpose() const {
    BigMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend BigMatrix operator*(const BigMatrix& x, const BigMatrix& y) {
    BigMatrix r(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  template <class V>
  std::vector<V> apply(const std::vector<V>& v) const {
    std::vector<V> r(n_, V(0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if ((*this)(i, j) != 0) r[i] += V((*this)(i, j)) * v[j];
    return r;
  }

  BigInt minEntry() const { return *std::min_element(a_.begin(), a_.end()); }
  BigInt maxEntry() const { return *std::max_element(a_.begin(), a_.end()); }
  std::size_t maxBits() const {
    std::size_t bits = 0;
    for (const auto& x : a_) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
    return bits;
  }

  /// Exact determinant by fraction-free Bareiss elimination.
  BigInt determinant() const {
    if (n_ == 0) return 1;
    std::vector<BigInt> m = a_;
    auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * n_ + j]; };
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
      if (at(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n_ && at(p, k) == 0) ++p;
        if (p == n_) return 0;
        for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n_; ++i)
        for (std::size_t j = k + 1; j < n_; ++j)
          at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      prev = at(k, k);
    }
    return sign * at(n_ - 1, n_ - 1);
  }

  bool operator==(const BigMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  const std::vector<BigInt>& data() const { return a_; }

 private:
  std::size_t n_ = 0;
  std::vector<BigInt> a_;
};

/// Rank of a rational matrix given as rows (exact Gaussian elimination).
inline std::size_t rationalRank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  std::size_t cols = rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace linvol
