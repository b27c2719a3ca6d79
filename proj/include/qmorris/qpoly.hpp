#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmorris {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact Laurent polynomial in the formal variable q with big-integer
/// coefficients.
///
/// Storage is a dense coefficient window [low, low + size) whose first and
/// last entries are nonzero; the zero polynomial has an empty window. Only
/// nonzero coefficients are observable through terms().
class QPoly {
 public:
  QPoly() = default;
  QPoly(long c);  // NOLINT(google-explicit-constructor): constants read naturally
  explicit QPoly(const Integer& c);

  static QPoly monomial(const Integer& c, int exponent);
  /// 1 - q^s.
  static QPoly one_minus_q(int s);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return coeffs_.size() == 1; }
  bool is_one() const;

  /// Lowest / highest exponent carrying a nonzero coefficient. Zero polynomial: 0.
  int low_degree() const { return low_; }
  int degree() const { return is_zero() ? 0 : low_ + static_cast<int>(coeffs_.size()) - 1; }

  Integer coeff(int exponent) const;
  /// Nonzero (exponent, coefficient) pairs in ascending exponent order.
  std::vector<std::pair<int, Integer>> terms() const;
  const std::vector<Integer>& dense() const { return coeffs_; }

  Integer leading_coeff() const;
  Integer trailing_coeff() const;
  /// gcd of all coefficients, nonnegative; zero for the zero polynomial.
  Integer content() const;

  QPoly& operator+=(const QPoly& other);
  QPoly& operator-=(const QPoly& other);
  QPoly& operator*=(const QPoly& other);
  QPoly& operator*=(const Integer& c);
  QPoly operator-() const;

  /// this += c * q^shift * p. Hot path of multivariate expansion.
  void add_scaled(const QPoly& p, int shift, const Integer& c);
  /// p * q^shift.
  QPoly shifted(int shift) const;
  /// Divide every coefficient exactly by c (c must divide all of them).
  QPoly divexact(const Integer& c) const;

  /// Exact value at q = q0. Throws DomainError for q0 = 0 with negative exponents.
  Rational eval(const Rational& q0) const;

  std::string to_string() const;
  /// Parses the to_string() format ("1 - q + 2*q^3", "-q^-2"). Throws DomainError.
  static QPoly parse(std::string_view text);

  friend bool operator==(const QPoly& a, const QPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);

 private:
  void trim();

  int low_ = 0;
  std::vector<Integer> coeffs_;
};

/// Polynomial product (spelled out for call sites that mirror the algebra).
inline QPoly qpoly_mul(const QPoly& p, const QPoly& r) { return p * r; }
inline Rational qpoly_eval(const QPoly& p, const Rational& q0) { return p.eval(q0); }

/// Writes a / b to *quotient and returns true when b divides a exactly in Z[q, 1/q].
/// Throws DivisionByZero for b = 0.
bool exact_divide(const QPoly& a, const QPoly& b, QPoly* quotient);

/// Primitive gcd of the polynomial parts (lowest q-powers removed), with
/// positive leading coefficient. gcd(0, 0) = 0.
QPoly poly_gcd(const QPoly& a, const QPoly& b);

std::string to_string(const Rational& r);

}  // namespace qmorris
