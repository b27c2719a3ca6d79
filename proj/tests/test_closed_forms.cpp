#include "doctest.h"

#include <vector>

#include "qmorris/closed_forms.hpp"
#include "qmorris/ct_engine.hpp"
#include "qmorris/error.hpp"
#include "support/oracles.hpp"

using namespace qmorris;

namespace {
QPoly P(const char* s) { return QPoly::parse(s); }
QRat R(const QPoly& n, const QPoly& d) { return QRat::normalize(n, d); }
}  // namespace

TEST_CASE("q_factorial examples") {
  CHECK(q_factorial(0) == QPoly(1));
  CHECK(q_factorial(2) == P("1 - q") * P("1 - q^2"));
  CHECK(q_factorial(3) == P("1 - q") * P("1 - q^2") * P("1 - q^3"));
  for (int m = 0; m <= 12; ++m) CHECK(q_factorial(m) == qmtest::naive_qfac(m));
  CHECK_THROWS_AS(q_factorial(-1), DomainError);
}

TEST_CASE("gauss_binom examples") {
  CHECK(gauss_binom(2, 1) == QRat(P("1 + q")));
  for (int N = -4; N <= 6; ++N) CHECK(gauss_binom(N, 0) == QRat(1));
  CHECK(gauss_binom(-1, 1) == QRat(P("-q^-1")));
}

TEST_CASE("gauss_binom matches the Pascal recurrence") {
  for (int N = 0; N <= 14; ++N)
    for (int k = 0; k <= N + 2; ++k) CHECK(gauss_binom(N, k) == QRat(qmtest::pascal_qbinom(N, k)));
}

TEST_CASE("gauss_binom at negative tops") {
  // [-N, k] = (-1)^k q^{-Nk - k(k-1)/2} [N + k - 1, k]
  for (int N = 1; N <= 6; ++N)
    for (int k = 0; k <= 5; ++k) {
      QPoly expect = qmtest::pascal_qbinom(N + k - 1, k).shifted(-N * k - k * (k - 1) / 2);
      if (k % 2) expect = -expect;
      CHECK(gauss_binom(-N, k) == QRat(expect));
    }
}

TEST_CASE("finite q-binomial theorem") {
  for (int N = 0; N <= 8; ++N) CHECK(qbinomial_theorem_finite(N));
}

TEST_CASE("dyson_rhs examples") {
  const std::vector<int> a11{1, 1}, a000{0, 0, 0}, a111{1, 1, 1};
  CHECK(dyson_rhs(a11) == 2);
  CHECK(dyson_rhs(a000) == 1);
  CHECK(dyson_rhs(a111) == 6);
  for (const auto& v : qmtest::bounded_vectors(4, 8)) {
    int sum = 0;
    Integer den = 1;
    for (int x : v) {
      sum += x;
      den *= qmtest::naive_factorial(x);
    }
    CHECK(dyson_rhs(v) == qmtest::naive_factorial(sum) / den);
  }
}

TEST_CASE("qdyson_rhs examples") {
  const std::vector<int> a11{1, 1}, a00{0, 0}, a21{2, 1};
  CHECK(qdyson_rhs(a11) == QRat(P("1 + q")));
  CHECK(qdyson_rhs(a00) == QRat(1));
  CHECK(qdyson_rhs(a21) == QRat(P("1 + q + q^2")));
}

TEST_CASE("morris_rhs examples") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      ParamSet p{1, a, b, 0, 0, 2, {}};
      QRat expect = R(qmtest::naive_qfac(a + b), qmtest::naive_qfac(a) * qmtest::naive_qfac(b));
      CHECK(morris_rhs(p) == expect);
      CHECK(morris_rhs(p, MorrisForm::Factorial) == expect);
      const std::vector<int> ab{a, b};
      CHECK(morris_rhs(p) == qdyson_rhs(ab));
      ParamSet p2{2, a, b, 0, 0, 0, {}};
      CHECK(morris_rhs(p2) == expect * expect);
    }
  CHECK(morris_rhs(ParamSet{1, 1, 1, 0, 0, 0, {}}) == QRat(P("1 + q")));
  CHECK_THROWS_AS(morris_rhs(ParamSet{2, 0, 1, 1, 0, 2, {}}, MorrisForm::Factorial), DomainError);
}

TEST_CASE("factorial and rewritten forms agree") {
  for (int n = 1; n <= 3; ++n)
    for (int a = 1; a <= 4; ++a)
      for (int b = 0; b <= 2; ++b)
        for (int k = 0; k <= 3; ++k)
          for (int m = 0; m < n; ++m)
            for (int l = 0; l < n; ++l) {
              ParamSet p{n, a, b, m, l, k, {}};
              QRat f = morris_rhs(p, MorrisForm::Factorial);
              CHECK(f == morris_rhs(p, MorrisForm::Rewritten));
              CHECK(f == qmtest::naive_morris(p));
            }
}

TEST_CASE("closed form against the kernel constant term") {
  for (int n = 1; n <= 3; ++n)
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 1; ++b)
        for (int k = 0; k <= 2; ++k)
          for (int m = 0; m <= n; ++m)
            for (int l = 0; l + m <= n; ++l) {
              if (m >= 1 && a < 1) continue;
              ParamSet p{n, a, b, m, l, k, {}};
              CHECK(qmtest::naive_ct(build_hk_kernel(n, a, b, m, l, k)) == morris_rhs(p));
            }
}

TEST_CASE("closed form differs from the constant term when m + l > n") {
  // n=3 a=1 b=0 m=l=2 k=0: the kernel factors into one-variable pieces
  // (x1/x0)_2 (x2/x0)_1 (x0/x3)_1 (q x3/x0)_1 whose total constant term is 1 + q.
  ParamSet p{3, 1, 0, 2, 2, 0, {}};
  QRat ct = ct_direct(build_hk_kernel(3, 1, 0, 2, 2, 0));
  CHECK(ct == QRat(P("1 + q")));
  CHECK(qmtest::naive_ct(build_hk_kernel(3, 1, 0, 2, 2, 0)) == ct);
  CHECK(morris_rhs(p) == QRat(P("1 + q") * P("1 - q^2")));
  CHECK(morris_rhs(p) != ct);
}

TEST_CASE("vanishing_sets examples") {
  VanishingSets v = vanishing_sets(ParamSet{3, 0, 1, 2, 1, 4, {}});
  CHECK(v.d1 == std::vector<int>{0, 4});
  CHECK(v.d2 == std::vector<int>{10});
  CHECK(v.d3 == std::vector<int>{1, 5, 9});
  CHECK(v.distinct);
  CHECK(vanishing_sets(ParamSet{3, 0, 1, 0, 1, 4, {}}).d1.empty());
  CHECK_FALSE(vanishing_sets(ParamSet{4, 0, 0, 3, 3, 1, {}}).distinct);
  CHECK_THROWS_AS(vanishing_sets(ParamSet{2, 0, 0, 2, 0, 2, {}}), DomainError);
}

TEST_CASE("vanishing sets are distinct with the right count when k > b + 1") {
  for (int n = 1; n <= 5; ++n)
    for (int b = 0; b <= 3; ++b)
      for (int k = b + 2; k <= b + 5; ++k)
        for (int m = 0; m < n; ++m)
          for (int l = 0; l < n; ++l) {
            ParamSet p{n, 0, b, m, l, k, {}};
            VanishingSets v = vanishing_sets(p);
            CHECK(v.distinct);
            CHECK(static_cast<int>(v.all().size()) == n * b + m + l);
            CHECK(static_cast<int>(v.d1.size()) == m);
            CHECK(static_cast<int>(v.d2.size()) == l);
            CHECK(static_cast<int>(v.d3.size()) == n * b);
          }
}

TEST_CASE("prop52 examples") {
  for (int n = 1; n <= 4; ++n)
    for (int b = 0; b <= 3; ++b) {
      CHECK(prop52_lhs(n, b, b + 1) == QRat(1));
      CHECK(prop52_rhs(n, b, b + 1) == QRat(1));
    }
  QRat two_term = R(QPoly(1), P("1 - q")) - R(P("q^2"), P("1 - q"));
  CHECK(two_term == QRat(P("1 + q")));
  CHECK(prop52_lhs(1, 0, 2) == two_term);
  CHECK(prop52_rhs(1, 0, 2) == QRat(P("1 + q")));
  CHECK(prop52_lhs(2, 0, 2) == R(P("1 - q^4"), P("1 - q")));
  CHECK(prop52_rhs(2, 0, 2) == R(P("1 - q^4"), P("1 - q")));
  CHECK_THROWS_AS(prop52_lhs(2, 1, 1), DomainError);
}

TEST_CASE("prop52 identity") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 6; ++k)
      for (int b = 0; b < k; ++b) {
        CHECK(prop52_lhs(n, b, k) == prop52_rhs(n, b, k));
        CHECK(prop52_rhs(n, b, k) == QRat(qmtest::pascal_qbinom(n * k, k - b - 1)));
      }
}

TEST_CASE("ParamSet") {
  ParamSet p{2, 1, 0, 1, 0, 2, {}};
  CHECK(p.to_string() == "n=2 a=1 b=0 m=1 l=0 k=2");
  CHECK(p.d() == 1);
  CHECK(p.h_extra() == 3);
  p.q0 = Rational(3, 2);
  CHECK(p.to_string() == "n=2 a=1 b=0 m=1 l=0 k=2 q0=3/2");
  CHECK_THROWS_AS((ParamSet{0, 0, 0, 0, 0, 0, {}}).validate(), DomainError);
  CHECK_THROWS_AS((ParamSet{2, 0, 0, 3, 0, 0, {}}).validate(), DomainError);
}
