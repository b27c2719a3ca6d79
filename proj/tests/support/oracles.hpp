#pragma once

// Generators and independent reference computations shared by the test
// binaries. Nothing here calls the cyclotomic or pruning paths of the library.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qmorris/closed_forms.hpp"
#include "qmorris/ct_engine.hpp"
#include "qmorris/kernels.hpp"
#include "qmorris/laurent.hpp"
#include "qmorris/qpoly.hpp"
#include "qmorris/qrat.hpp"

namespace qmtest {

using namespace qmorris;

/// Deterministic generator; every property test seeds its own instance.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  QPoly poly(int max_terms = 4, int lo = -3, int hi = 4, int cmax = 9) {
    QPoly p;
    int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) p += QPoly::monomial(Integer(uniform(-cmax, cmax)), uniform(lo, hi));
    return p;
  }
  QPoly nonzero_poly(int max_terms = 4) {
    for (;;) {
      QPoly p = poly(max_terms);
      if (!p.is_zero()) return p;
    }
  }
  Rational rational(int lo = -7, int hi = 7) {
    Rational r(uniform(lo, hi), uniform(1, 5));
    r.canonicalize();
    return r;
  }
  /// Nonzero rational avoiding 0 and +-1.
  Rational generic_point() {
    for (;;) {
      Rational r = rational(-9, 9);
      if (r != 0 && r != 1 && r != -1) return r;
    }
  }
  MultiLaurent laurent(std::size_t nvars, int max_terms = 4, int spread = 2) {
    MultiLaurent f(nvars);
    int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      ExponentVector e(nvars);
      for (std::size_t i = 0; i < nvars; ++i) e[i] = uniform(-spread, spread);
      f.add_term(e, poly(2, -2, 2, 4));
    }
    return f;
  }

 private:
  std::mt19937_64 rng_;
};

/// Pascal recurrence [N,k] = [N-1,k-1] + q^k [N-1,k] for 0 <= k <= N.
inline QPoly pascal_qbinom(int N, int k) {
  if (k < 0 || k > N) return QPoly();
  std::vector<QPoly> row{QPoly(1)};
  for (int r = 1; r <= N; ++r) {
    std::vector<QPoly> next(r + 1);
    for (int j = 0; j <= r; ++j) {
      if (j >= 1) next[j] += row[j - 1];
      if (j < r) next[j] += row[j].shifted(j);
    }
    row = std::move(next);
  }
  return row[k];
}

/// Product of (1 - q^i) for i = 1..m, multiplied out term by term.
inline QPoly naive_qfac(int m) {
  QPoly p(1);
  for (int i = 1; i <= m; ++i) p = p * (QPoly(1) - QPoly::monomial(Integer(1), i));
  return p;
}

inline Integer naive_factorial(int m) {
  Integer f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

/// Expands a numerator-only product factor by factor, without cancel or pruning.
inline MultiLaurent naive_expand(const FactorProduct& f) {
  std::size_t nv = f.nvars();
  MultiLaurent acc = MultiLaurent::monomial(f.premono.x, QPoly::monomial(Integer(f.premono.sign), f.premono.qexp));
  for (const AtomicFactor& a : f.num) {
    MultiLaurent g = MultiLaurent::constant(nv, QPoly(1));
    g.add_term(a.mono, QPoly::monomial(Integer(-1), a.qexp));
    acc = acc * g;
  }
  return acc;
}

/// prefactor * CT of naive_expand(). Requires an empty denominator.
inline QRat naive_ct(const FactorProduct& f) {
  return f.prefactor * QRat(naive_expand(f).ct_all());
}

/// Factorial-form product of the closed form, assembled from naive_qfac and a
/// single normalization at the end.
inline QRat naive_morris(const ParamSet& p) {
  auto chi = [](bool c) { return c ? 1 : 0; };
  QPoly num(1), den(1);
  for (int i = 0; i < p.n; ++i) {
    num *= naive_qfac(p.a + p.b + i * p.k + chi(i >= p.n - p.l));
    num *= naive_qfac((i + 1) * p.k);
    den *= naive_qfac(p.a + i * p.k - chi(i < p.m));
    den *= naive_qfac(p.b + i * p.k + chi(i >= p.n - p.m - p.l));
    den *= naive_qfac(p.k);
  }
  return QRat::normalize(num, den);
}

/// Every tuple (t_1..t_s) with entries in 0..hi, lexicographic.
inline std::vector<std::vector<int>> all_tuples(int s, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(s, 0);
  for (;;) {
    out.push_back(t);
    int i = s - 1;
    while (i >= 0 && t[i] == hi) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
  return out;
}

/// Calls fn(tuple) for every tuple of length s with entries in 0..hi, reusing one buffer.
template <class Fn>
void for_each_tuple(int s, int hi, Fn&& fn) {
  std::vector<int> t(static_cast<std::size_t>(s), 0);
  for (;;) {
    fn(t);
    int i = s - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == hi) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++t[static_cast<std::size_t>(i)];
  }
}

/// The classifier's three conditions read off directly: the smallest index
/// with t_i <= b, else the lexicographically least close pair, else Exceptional.
inline TupleVerdict brute_classify(int kp, int b, std::span<const int> t) {
  const int s = static_cast<int>(t.size());
  int small = 0;
  for (int i = s; i >= 1; --i)
    if (t[static_cast<std::size_t>(i - 1)] <= b) small = i;
  if (small) return {TupleVerdict::Kind::EarlySmall, small, 0};
  int bi = 0, bj = 0;
  for (int i = s; i >= 1; --i)
    for (int j = s; j > i; --j) {
      const int diff = t[static_cast<std::size_t>(j - 1)] - t[static_cast<std::size_t>(i - 1)];
      if (diff >= 1 - kp && diff <= kp) bi = i, bj = j;
    }
  if (bi) return {TupleVerdict::Kind::ClosePair, bi, bj};
  return {TupleVerdict::Kind::Exceptional, 0, 0};
}

/// Every vector of length len with nonnegative entries summing to at most cap.
inline std::vector<std::vector<int>> bounded_vectors(int len, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(len, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == len) {
      out.push_back(v);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      v[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  rec(rec, 0, cap);
  return out;
}

/// Random rational kernel in nvars variables: denominator factors
/// (1 - q^u x_i/x_j), numerator ratio factors and an optional pure factor.
/// Draws may fall outside the partial-fraction class (repeated poles,
/// positive degree); callers discard those.
inline FactorProduct random_rational_kernel(Gen& g, std::size_t nvars) {
  FactorProduct f(nvars);
  int dens = g.uniform(1, 3);
  for (int t = 0; t < dens; ++t) {
    std::size_t i = static_cast<std::size_t>(g.uniform(0, static_cast<int>(nvars) - 1));
    std::size_t j = static_cast<std::size_t>(g.uniform(0, static_cast<int>(nvars) - 2));
    if (j >= i) ++j;
    f.den.push_back({g.uniform(-2, 2), ExponentVector::ratio(nvars, i, j)});
  }
  int nums = g.uniform(0, 2);
  for (int t = 0; t < nums; ++t) {
    std::size_t i = static_cast<std::size_t>(g.uniform(0, static_cast<int>(nvars) - 1));
    std::size_t j = static_cast<std::size_t>(g.uniform(0, static_cast<int>(nvars) - 2));
    if (j >= i) ++j;
    f.num.push_back({g.uniform(-2, 2), ExponentVector::ratio(nvars, i, j)});
  }
  if (g.coin()) f.num.push_back({g.uniform(1, 3), ExponentVector(nvars)});
  f.premono.qexp = g.uniform(-1, 1);
  return f;
}

}  // namespace qmtest
