#pragma once

#include <map>
#include <string>
#include <string_view>

#include "qmorris/qpoly.hpp"

namespace qmorris {

/// Reduced ratio of two QPoly values.
///
/// Canonical form: num and den are coprime in Q[q], share no integer content
/// and no power of q; den has lowest exponent 0 and a positive trailing
/// coefficient. Zero is 0/1. Two canonical values are equal iff their
/// numerators and denominators are identical.
class QRat {
 public:
  QRat() : den_(1) {}
  QRat(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  QRat(const QPoly& p);               // NOLINT(google-explicit-constructor)

  /// Canonicalizes num/den. Throws DivisionByZero when den = 0.
  static QRat normalize(QPoly num, QPoly den);

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// True when the value is a Laurent polynomial in q (den = 1).
  bool is_poly() const { return den_.is_one(); }

  QRat& operator+=(const QRat& o);
  QRat& operator-=(const QRat& o);
  QRat& operator*=(const QRat& o);
  QRat& operator/=(const QRat& o);
  QRat operator-() const;
  QRat inverse() const;

  /// Exact value at q = q0; throws DivisionByZero if den(q0) = 0.
  Rational eval(const Rational& q0) const;

  /// "num" when den = 1, otherwise "(num)/(den)".
  std::string to_string() const;
  static QRat parse(std::string_view text);

  friend bool operator==(const QRat& a, const QRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend QRat operator+(QRat a, const QRat& b) { return a += b; }
  friend QRat operator-(QRat a, const QRat& b) { return a -= b; }
  friend QRat operator*(QRat a, const QRat& b) { return a *= b; }
  friend QRat operator/(QRat a, const QRat& b) { return a /= b; }

 private:
  QRat(QPoly num, QPoly den, int) : num_(std::move(num)), den_(std::move(den)) {}
  friend class CyclotomicProduct;

  QPoly num_;
  QPoly den_;
};

inline QRat qrat_normalize(const QPoly& num, const QPoly& den) { return QRat::normalize(num, den); }

/// Cross-multiplication equality; valid for non-canonical operands too.
bool equal_by_cross_multiplication(const QPoly& n1, const QPoly& d1, const QPoly& n2, const QPoly& d2);

/// The d-th basis polynomial of the (1 - q^j) factorization: 1 - q for d = 1,
/// the cyclotomic polynomial Phi_d for d >= 2. Their product over d | j is 1 - q^j.
const QPoly& cyclotomic_basis(int d);

/// A value  sign * q^shift * prod_d B_d^{e_d}  (or exactly zero), where B_d is
/// cyclotomic_basis(d). Products of q-Pochhammer symbols live here without
/// any gcd work, and to_qrat() is canonical by construction.
class CyclotomicProduct {
 public:
  CyclotomicProduct() = default;

  bool is_zero() const { return zero_; }

  /// Multiply by (1 - q^j)^power; power may be negative. j = 0 with positive
  /// power makes the product zero, with negative power throws DivisionByZero.
  CyclotomicProduct& mul_one_minus_q(int j, int power = 1);
  /// Multiply by (q;q)_m^power. Throws DomainError for m < 0.
  CyclotomicProduct& mul_q_factorial(int m, int power = 1);
  CyclotomicProduct& mul_monomial(int sign, int qshift);
  CyclotomicProduct& operator*=(const CyclotomicProduct& o);

  const std::map<int, int>& exponents() const { return exps_; }

  QRat to_qrat() const;

 private:
  bool zero_ = false;
  int sign_ = 1;
  int shift_ = 0;
  std::map<int, int> exps_;
};

}  // namespace qmorris
