#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <unordered_map>

#include "qmorris/qpoly.hpp"

namespace qmorris {

/// Largest ambient variable count (x0..x7).
inline constexpr std::size_t kMaxVars = 8;

/// Exponents of x0..x_{n}, fixed length per ambient ring.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t nvars);
  ExponentVector(std::initializer_list<int> exps);

  /// x_i^e in an nvars-variable ring.
  static ExponentVector unit(std::size_t nvars, std::size_t i, int e = 1);
  /// x_i / x_j.
  static ExponentVector ratio(std::size_t nvars, std::size_t i, std::size_t j);

  std::size_t size() const { return n_; }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }

  bool is_zero() const;
  /// Index of the lowest variable with nonzero exponent, or size() if none.
  std::size_t lowest_var() const;
  int total_degree() const;

  ExponentVector& operator+=(const ExponentVector& o);
  ExponentVector& operator-=(const ExponentVector& o);
  ExponentVector operator-() const;
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }
  friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }
  friend auto operator<=>(const ExponentVector& a, const ExponentVector& b) {
    return a.e_ <=> b.e_;
  }

  /// "x0^-2*x1^2"; "1" for the zero vector.
  std::string to_string() const;

  std::size_t hash() const;

 private:
  std::array<std::int32_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

struct ExponentVectorHash {
  std::size_t operator()(const ExponentVector& e) const { return e.hash(); }
};

/// Sparse Laurent polynomial in x0..x_{nvars-1} with QPoly coefficients.
class MultiLaurent {
 public:
  using TermMap = std::unordered_map<ExponentVector, QPoly, ExponentVectorHash>;

  explicit MultiLaurent(std::size_t nvars);
  static MultiLaurent constant(std::size_t nvars, const QPoly& c);
  static MultiLaurent monomial(const ExponentVector& e, const QPoly& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// this += c * x^e.
  void add_term(const ExponentVector& e, const QPoly& c);

  MultiLaurent& operator+=(const MultiLaurent& o);
  MultiLaurent& operator-=(const MultiLaurent& o);
  friend MultiLaurent operator+(MultiLaurent a, const MultiLaurent& b) { return a += b; }
  friend MultiLaurent operator-(MultiLaurent a, const MultiLaurent& b) { return a -= b; }
  friend MultiLaurent operator*(const MultiLaurent& a, const MultiLaurent& b);
  friend bool operator==(const MultiLaurent& a, const MultiLaurent& b);

  /// Multiplies by (1 - q^qexp * x^mono) in place.
  void mul_binomial(int qexp, const ExponentVector& mono);
  /// Multiplies every coefficient by c.
  MultiLaurent scaled(const QPoly& c) const;

  /// Coefficient of x^alpha (zero if absent).
  QPoly coeff(const ExponentVector& alpha) const;
  /// Terms free of x_i.
  MultiLaurent ct_var(std::size_t i) const;
  /// Iterated constant term over every variable, ascending index.
  QPoly ct_all() const;
  /// Replace x_i^e by x_j^e q^(s e) everywhere. i = j rescales x_i by q^s.
  MultiLaurent subst(std::size_t i, std::size_t j, int s) const;

  /// Every term has total degree 0.
  bool is_homogeneous() const;

  std::string to_string() const;

 private:
  void check_var(std::size_t i) const;

  std::size_t nvars_;
  TermMap terms_;
};

inline MultiLaurent ml_mul(const MultiLaurent& f, const MultiLaurent& g) { return f * g; }
inline QPoly ml_coeff(const MultiLaurent& f, const ExponentVector& alpha) { return f.coeff(alpha); }
inline MultiLaurent ml_ct_var(const MultiLaurent& f, std::size_t i) { return f.ct_var(i); }
inline MultiLaurent ml_subst(const MultiLaurent& f, std::size_t i, std::size_t j, int s) { return f.subst(i, j, s); }
inline QPoly ml_ct_all(const MultiLaurent& f) { return f.ct_all(); }

}  // namespace qmorris
