#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmorris/laurent.hpp"
#include "qmorris/qrat.hpp"

namespace qmorris {

/// The factor (1 - q^qexp * x^mono). It is the zero factor exactly when
/// qexp = 0 and mono = 0.
struct AtomicFactor {
  int qexp = 0;
  ExponentVector mono;

  bool is_zero() const { return qexp == 0 && mono.is_zero(); }
  /// Free of every x variable.
  bool is_pure() const { return mono.is_zero(); }
  std::string to_string() const;

  friend bool operator==(const AtomicFactor& a, const AtomicFactor& b) = default;
  friend auto operator<=>(const AtomicFactor& a, const AtomicFactor& b) {
    if (auto c = a.qexp <=> b.qexp; c != 0) return c;
    return a.mono <=> b.mono;
  }
};

/// sign * q^qexp * x^x.
struct Monomial {
  int sign = 1;
  int qexp = 0;
  ExponentVector x;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : x(nvars) {}
  Monomial(int sign_, int qexp_, ExponentVector x_) : sign(sign_), qexp(qexp_), x(x_) {}

  Monomial& operator*=(const Monomial& o);
  Monomial inverse() const { return {sign, -qexp, -x}; }
  std::string to_string() const;
};

/// prefactor * premono * prod(num) / prod(den), kept unexpanded.
/// Factors are multisets: order carries no meaning, repeats are multiplicity.
struct FactorProduct {
  QRat prefactor{1};
  Monomial premono;
  std::vector<AtomicFactor> num;
  std::vector<AtomicFactor> den;

  explicit FactorProduct(std::size_t nvars) : premono(nvars) {}

  /// The exact zero product.
  static FactorProduct zero(std::size_t nvars);

  std::size_t nvars() const { return premono.x.size(); }
  bool is_zero() const { return prefactor.is_zero(); }

  FactorProduct& operator*=(const FactorProduct& o);
  friend FactorProduct operator*(FactorProduct a, const FactorProduct& b) { return a *= b; }

  /// Factor-list rendering used in certificates and debugging.
  std::string to_string() const;
};

/// Residue-chain state: r_1 < ... < r_s in 1..n and shifts 0 <= k_i <= h,
/// plus the parameters of the Q(h) it indexes.
struct ChainState {
  std::vector<int> r;
  std::vector<int> k;
  int h = 0;
  int n = 1;
  int b = 0;
  int m = 0;
  int l = 0;
  int kparam = 0;

  std::size_t size() const { return r.size(); }
  /// Throws DomainError when the invariants do not hold.
  void validate() const;
  /// Extended by (r_next, k_next).
  ChainState extended(int r_next, int k_next) const;
  std::string to_string() const;
};

/// Factors (1 - q^(qshift+i) x^mono) for i = 0..length-1.
std::vector<AtomicFactor> pochhammer(int qshift, const ExponentVector& mono, int length);

/// The Habsieger-Kadell kernel in x0..xn (numerator only).
FactorProduct build_hk_kernel(int n, int a, int b, int m, int l, int k);
/// prod_{i<j} (x_i/x_j)_{a_i} (q x_j/x_i)_{a_j}.
FactorProduct build_qdyson_kernel(std::span<const int> a);
/// prod_{i<j} (1 - x_i/x_j)^{a_i} (1 - x_j/x_i)^{a_j}: the q-Dyson kernel at q = 1.
FactorProduct build_dyson_kernel(std::span<const int> a);

/// The rational function Q(h) whose total constant term is the polynomial
/// extension of the kernel constant term at a = -h.
FactorProduct build_Q(int h, int n, int b, int m, int l, int k);

/// Replaces x_{r_i} by x_{r_s} q^(k_s - k_i) for i = 0..s-1, with r_0 = k_0 = 0.
FactorProduct apply_E(const FactorProduct& f, const ChainState& chain);

/// Q(h | r; k). The matched denominator factors (1 - x0/(x_{r_i} q^{k_i})) are
/// removed before substitution. Returns the zero product when some k_i = 0
/// and r_s > m. Throws DomainError when a matched factor is missing.
FactorProduct build_Q_chain(const ChainState& chain);
/// Same, reusing a prebuilt Q(h) for chain's parameters.
FactorProduct build_Q_chain(const FactorProduct& q_h, const ChainState& chain);
/// build_Q_chain without the k_i = 0 shortcut: the zero, when present, shows
/// up as an explicit numerator factor.
FactorProduct build_Q_chain_raw(const FactorProduct& q_h, const ChainState& chain);

/// A numerator factor equal to (1 - q^0 x^0), if any.
std::optional<AtomicFactor> detect_zero(const FactorProduct& f);

/// Rewrites every factor in canonical orientation (lowest nonzero x-exponent
/// positive; pure factors with positive q-exponent), moving the monomials into
/// premono, then removes the multiset intersection of num and den.
FactorProduct cancel(const FactorProduct& f);

/// Moves every x-free factor and the scalar part of premono into prefactor.
FactorProduct absorb_pure(const FactorProduct& f);

/// Value of an x-free product. Throws DomainError if x-dependent factors remain.
QRat pure_value(const FactorProduct& f);

/// Fully expanded Laurent polynomial. Throws NotPolynomial if a denominator
/// with x-dependence survives cancel(), or if the scalar part is not a
/// Laurent polynomial in q.
MultiLaurent expand(const FactorProduct& f);

/// Degree in x_i: numerator degree minus denominator degree.
int degree_in(const FactorProduct& f, std::size_t i);

/// Replaces x_i by x_j q^s in every factor and in premono.
FactorProduct substitute(const FactorProduct& f, std::size_t i, std::size_t j, int s);

/// Exact value at q = q0, x = point. Throws DivisionByZero at a pole.
Rational evaluate(const FactorProduct& f, const Rational& q0, std::span<const Rational> point);

/// Canonical orientation of one factor: f = mult * result.
AtomicFactor orient_canonical(const AtomicFactor& f, Monomial* mult);

}  // namespace qmorris
