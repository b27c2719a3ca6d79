#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmorris/qrat.hpp"

namespace qmorris {

/// Parameters (n, a, b, m, l, k) of the q-Morris family.
struct ParamSet {
  int n = 1;
  int a = 0;
  int b = 0;
  int m = 0;
  int l = 0;
  int k = 0;
  std::optional<Rational> q0;

  /// Degree bound nb + m + l of the constant term as a polynomial in q^a.
  int d() const { return n * b + m + l; }
  /// The extra evaluation point (n - l - 1)k + b + 1.
  int h_extra() const { return (n - l - 1) * k + b + 1; }

  /// n >= 1, 0 <= m,l <= n, b,k >= 0. Throws DomainError.
  void validate() const;
  /// "n=2 a=1 b=0 m=1 l=0 k=2".
  std::string to_string() const;
};

/// (q;q)_mm. Throws DomainError for mm < 0.
QPoly q_factorial(int mm);

/// prod_{i=1}^{kk} (1 - q^{N-i+1}) / (1 - q^i), defined for every integer N.
QRat gauss_binom(int N, int kk);

/// Checks (u;q)_N = sum_j q^{j(j-1)/2} [N choose j] (-u)^j coefficientwise in u.
bool qbinomial_theorem_finite(int N);

/// (a_0 + ... + a_n)! / (a_0! ... a_n!).
Integer dyson_rhs(std::span<const int> a);
/// (q)_{sum a} / prod (q)_{a_i}.
QRat qdyson_rhs(std::span<const int> a);

enum class MorrisForm { Factorial, Rewritten };

/// Closed form M_n(a, b, k, m, l; q). The factorial form needs a >= 1 when
/// m >= 1 and a >= 0 otherwise; the rewritten form accepts every integer a.
QRat morris_rhs(const ParamSet& p, MorrisForm form = MorrisForm::Rewritten);

struct VanishingSets {
  std::vector<int> d1;
  std::vector<int> d2;
  std::vector<int> d3;
  /// The union has exactly d() distinct elements.
  bool distinct = false;

  std::vector<int> all() const;
};

/// Root sets D1, D2, D3. Requires 0 <= m,l < n.
VanishingSets vanishing_sets(const ParamSet& p);

/// Both sides of the finite alternating sum identity. Require k >= b + 1.
QRat prop52_lhs(int n, int b, int k);
QRat prop52_rhs(int n, int b, int k);

}  // namespace qmorris
