#include "qmorris/closed_forms.hpp"

#include <algorithm>
#include <set>

#include "qmorris/error.hpp"

namespace qmorris {

namespace {

int chi(bool c) { return c ? 1 : 0; }

// One polynomial in u with QPoly coefficients, indexed by the power of u.
using UPoly = std::vector<QPoly>;

}  // namespace

void ParamSet::validate() const {
  if (n < 1) throw DomainError("ParamSet: n must be >= 1");
  if (m < 0 || m > n || l < 0 || l > n) throw DomainError("ParamSet: need 0 <= m,l <= n");
  if (b < 0 || k < 0) throw DomainError("ParamSet: need b,k >= 0");
}

std::string ParamSet::to_string() const {
  std::string s = "n=" + std::to_string(n) + " a=" + std::to_string(a) + " b=" + std::to_string(b) +
                  " m=" + std::to_string(m) + " l=" + std::to_string(l) + " k=" + std::to_string(k);
  if (q0) s += " q0=" + qmorris::to_string(*q0);
  return s;
}

QPoly q_factorial(int mm) {
  if (mm < 0) throw DomainError("q_factorial: negative index");
  QPoly r(1);
  for (int i = 1; i <= mm; ++i) r *= QPoly::one_minus_q(i);
  return r;
}

QRat gauss_binom(int N, int kk) {
  if (kk < 0) throw DomainError("gauss_binom: negative lower index");
  CyclotomicProduct c;
  for (int i = 1; i <= kk; ++i) {
    c.mul_one_minus_q(N - i + 1, 1);
    c.mul_one_minus_q(i, -1);
  }
  return c.to_qrat();
}

bool qbinomial_theorem_finite(int N) {
  if (N < 0) throw DomainError("qbinomial_theorem_finite: N must be >= 0");
  UPoly lhs{QPoly(1)};
  for (int i = 0; i < N; ++i) {
    UPoly next(lhs.size() + 1);
    for (std::size_t j = 0; j < lhs.size(); ++j) {
      next[j] += lhs[j];
      next[j + 1] -= lhs[j].shifted(i);
    }
    lhs = std::move(next);
  }
  UPoly rhs(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= N; ++j) {
    const QRat c = gauss_binom(N, j);
    if (!c.is_poly()) return false;
    QPoly t = c.num().shifted(j * (j - 1) / 2);
    rhs[static_cast<std::size_t>(j)] = j % 2 == 0 ? t : -t;
  }
  return lhs == rhs;
}

Integer dyson_rhs(std::span<const int> a) {
  Integer total = 0;
  Integer den = 1;
  for (int x : a) {
    if (x < 0) throw DomainError("dyson_rhs: negative exponent");
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(x));
    den *= f;
    total += x;
  }
  Integer num;
  mpz_fac_ui(num.get_mpz_t(), total.get_ui());
  return num / den;
}

QRat qdyson_rhs(std::span<const int> a) {
  CyclotomicProduct c;
  int total = 0;
  for (int x : a) {
    if (x < 0) throw DomainError("qdyson_rhs: negative exponent");
    c.mul_q_factorial(x, -1);
    total += x;
  }
  c.mul_q_factorial(total, 1);
  return c.to_qrat();
}

QRat morris_rhs(const ParamSet& p, MorrisForm form) {
  p.validate();
  const int n = p.n, a = p.a, b = p.b, m = p.m, l = p.l, k = p.k;
  CyclotomicProduct c;
  if (form == MorrisForm::Factorial) {
    if (a < chi(m > 0)) throw DomainError("morris_rhs: factorial form needs a >= 1 when m >= 1, a >= 0 otherwise");
    for (int i = 0; i < n; ++i) {
      c.mul_q_factorial(a + b + i * k + chi(i >= n - l), 1);
      c.mul_q_factorial((i + 1) * k, 1);
      c.mul_q_factorial(a + i * k - chi(i < m), -1);
      c.mul_q_factorial(b + i * k + chi(i >= n - m - l), -1);
      c.mul_q_factorial(k, -1);
    }
    return c.to_qrat();
  }
  c.mul_q_factorial(n * k, 1);
  c.mul_q_factorial(k, -n);
  for (int i = 0; i < m; ++i) c.mul_one_minus_q(a + i * k, 1);
  for (int i = n - l; i < n; ++i) c.mul_one_minus_q(a + i * k + b + 1, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j <= b; ++j) c.mul_one_minus_q(a + i * k + j, 1);
    c.mul_q_factorial(i * k, 1);
    c.mul_q_factorial(b + i * k + chi(i >= n - m - l), -1);
  }
  return c.to_qrat();
}

std::vector<int> VanishingSets::all() const {
  std::vector<int> out = d1;
  out.insert(out.end(), d2.begin(), d2.end());
  out.insert(out.end(), d3.begin(), d3.end());
  std::sort(out.begin(), out.end());
  return out;
}

VanishingSets vanishing_sets(const ParamSet& p) {
  p.validate();
  if (p.m >= p.n || p.l >= p.n) throw DomainError("vanishing_sets: need 0 <= m,l < n");
  VanishingSets v;
  for (int i = 0; i < p.m; ++i) v.d1.push_back(i * p.k);
  for (int i = p.n - p.l; i < p.n; ++i) v.d2.push_back(i * p.k + p.b + 1);
  for (int i = 0; i < p.n; ++i) {
    for (int j = 1; j <= p.b; ++j) v.d3.push_back(i * p.k + j);
  }
  std::sort(v.d3.begin(), v.d3.end());
  const auto all = v.all();
  v.distinct = std::set<int>(all.begin(), all.end()).size() == all.size() &&
               static_cast<int>(all.size()) == p.d();
  return v;
}

QRat prop52_lhs(int n, int b, int k) {
  if (n < 1 || b < 0 || k < b + 1) throw DomainError("prop52: need n >= 1 and k >= b + 1 >= 1");
  QRat sum;
  const int top = k - b - 1;
  for (int t = 0; t <= top; ++t) {
    CyclotomicProduct c;
    c.mul_monomial(t % 2 == 0 ? 1 : -1, (n - 1) * k * t + (b + 1) * t + t * (t + 1) / 2);
    c.mul_q_factorial(top - t, -1);
    c.mul_q_factorial(t, -1);
    sum += c.to_qrat();
  }
  return sum;
}

QRat prop52_rhs(int n, int b, int k) {
  if (n < 1 || b < 0 || k < b + 1) throw DomainError("prop52: need n >= 1 and k >= b + 1 >= 1");
  return gauss_binom(n * k, k - b - 1);
}

}  // namespace qmorris
