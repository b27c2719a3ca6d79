// Acceptance suite: one PASS/FAIL line per criterion, exact equality only.
//
// A criterion may fail only on points of a documented class where the
// closed form does not describe the constant term (see known_defect below).
// Such failures print FAIL with the class named; the process exits nonzero
// if any failure falls outside that class.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qmorris/closed_forms.hpp"
#include "qmorris/ct_engine.hpp"
#include "qmorris/error.hpp"
#include "qmorris/kernels.hpp"
#include "support/oracles.hpp"

using namespace qmorris;

namespace {

struct Tally {
  long points = 0;
  std::vector<std::string> failures;  // outside the known class
  std::vector<std::string> known;     // inside the known class
  std::string known_class;
  std::string note;

  void check(bool ok, const std::string& where, bool in_known_class = false) {
    ++points;
    if (ok) return;
    (in_known_class ? known : failures).push_back(where);
  }
  bool pass() const { return failures.empty() && known.empty(); }
};

// The closed form applies for m + l <= n only.
bool known_defect(const ParamSet& p) { return p.m + p.l > p.n; }
const char* kKnownClass = "closed form vs constant term with m + l > n";

bool g_unexpected = false;

void report(int id, const std::string& title, const std::function<void(Tally&)>& body) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %2d: %s  %s (%ld checks%s, %.2fs)\n", id, t.pass() ? "PASS" : "FAIL", title.c_str(),
              t.points, t.note.c_str(), secs);
  if (!t.known.empty()) {
    std::printf("    %zu failing checks, all in the class: %s; first: %s\n", t.known.size(), t.known_class.c_str(),
                t.known.front().c_str());
  }
  for (std::size_t i = 0; i < t.failures.size() && i < 5; ++i) std::printf("    failed: %s\n", t.failures[i].c_str());
  if (!t.failures.empty()) g_unexpected = true;
  std::fflush(stdout);
}

const Rational kQ0[] = {Rational(3, 2), Rational(5, 2)};

std::string at(const ParamSet& p, const Rational& q0) { return p.to_string() + " q0=" + to_string(q0); }

// (n, b, m, l) of the vanishing and extra-point grids, with k = b + 2.
std::vector<ParamSet> root_grid() {
  std::vector<ParamSet> out;
  for (int n = 2; n <= 3; ++n)
    for (int b = 0; b <= 1; ++b)
      for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) out.push_back(ParamSet{n, 0, b, m, l, b + 2, {}});
  return out;
}

std::string vec_str(const std::vector<int>& a) {
  std::string s = "a=(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

Rational qpow(const Rational& q0, int e) {
  Rational v = 1;
  for (int i = 0; i < std::abs(e); ++i) v *= q0;
  return e < 0 ? Rational(1 / v) : v;
}

}  // namespace

int main() {
  report(1, "q-Dyson constant terms, n <= 3, sum a <= 6", [](Tally& t) {
    for (int n = 1; n <= 3; ++n)
      for (const auto& a : qmtest::bounded_vectors(n + 1, 6))
        t.check(ct_direct(build_qdyson_kernel(a)) == qdyson_rhs(a), vec_str(a));
  });

  report(2, "Dyson constant terms at q = 1, n <= 4, sum a <= 8", [](Tally& t) {
    for (int n = 1; n <= 4; ++n)
      for (const auto& a : qmtest::bounded_vectors(n + 1, 8)) {
        QRat ct = ct_direct(build_dyson_kernel(a));
        t.check(ct.is_poly() && ct.num().is_constant() && ct.num().coeff(0) == dyson_rhs(a),
                vec_str(a));
      }
  });

  report(3, "q-Morris constant terms against the closed form", [](Tally& t) {
    t.known_class = kKnownClass;
    for (int n = 1; n <= 3; ++n)
      for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l)
          for (int a = (m == 0 ? 0 : 1); a <= 3; ++a)
            for (int b = 0; b <= 2; ++b)
              for (int k = 0; k <= 3; ++k) {
                ParamSet p{n, a, b, m, l, k, {}};
                t.check(ct_direct(build_hk_kernel(n, a, b, m, l, k)) == morris_rhs(p, MorrisForm::Factorial),
                        p.to_string(), known_defect(p));
              }
  });

  report(4, "interpolated polynomial vanishes exactly on D1 u D2 u D3", [](Tally& t) {
    for (const ParamSet& base : root_grid())
      for (const Rational& q0 : kQ0) {
        ParamSet p = base;
        p.q0 = q0;
        const VanishingSets v = vanishing_sets(p);
        const InterpolatedPoly poly = interp_in_qa(p);
        t.check(v.distinct && static_cast<int>(v.all().size()) == p.d(), at(p, q0) + " root count");
        t.check(poly.degree() == p.d(), at(p, q0) + " degree");
        for (int h : v.all()) t.check(poly(qpow(q0, -h)) == 0, at(p, q0) + " h=" + std::to_string(h));
      }
  });

  report(5, "extra point equals the closed form at a = -h", [](Tally& t) {
    t.known_class = kKnownClass;
    for (const ParamSet& p : root_grid())
      for (const Rational& q0 : kQ0) {
        const int h = p.h_extra();
        ParamSet neg = p;
        neg.a = -h;
        t.check(mprime_at(p, h, q0) == morris_rhs(neg).eval(q0), at(p, q0) + " h=" + std::to_string(h),
                known_defect(p));
      }
  });

  report(6, "certified recursion agrees with interpolation", [](Tally& t) {
    for (const ParamSet& p : root_grid()) {
      std::vector<int> hs = vanishing_sets(p).all();
      hs.push_back(p.h_extra());
      for (int h : hs) {
        const std::string where = p.to_string() + " h=" + std::to_string(h);
        RecursionResult r = ct_recursion(p, h);
        for (const Rational& q0 : kQ0) t.check(r.value.eval(q0) == mprime_at(p, h, q0), where + " q0=" + to_string(q0));
        std::string why;
        t.check(revalidate(r.certificate, &why), where + " revalidate: " + why);
        auto expanded = r.certificate.leaves(Verdict::Expanded);
        if (h != p.h_extra()) {
          t.check(expanded.empty() && r.value.is_zero(), where + " root with a surviving leaf");
          for (const auto* z : r.certificate.leaves(Verdict::ZeroByFactor))
            t.check(z->witness && z->witness->is_zero(), where + " witness");
          continue;
        }
        bool ok = expanded.size() == 1;
        if (ok) {
          const ChainState& c = expanded[0]->chain;
          ok = static_cast<int>(c.size()) == p.n - p.l;
          for (int i = 1; ok && i <= p.n - p.l; ++i)
            ok = c.r[static_cast<std::size_t>(i - 1)] == i &&
                 c.k[static_cast<std::size_t>(i - 1)] == (p.n - p.l - i) * p.k + p.b + 1;
        }
        t.check(ok, where + " surviving leaf");
      }
    }
  });

  report(7, "shift-tuple classifier against brute force, s <= 5, k <= 4, b <= 2", [](Tally& t) {
    long tuples = 0;
    for (int s = 1; s <= 5; ++s)
      for (int kp = 0; kp <= 4; ++kp)
        for (int b = 0; b <= 2; ++b) {
          long mismatches = 0;
          long total = 0;
          int exceptional = 0;
          bool exceptional_shape = true;
          qmtest::for_each_tuple(s, (s - 1) * kp + b + 1, [&](const std::vector<int>& tup) {
            ++total;
            const TupleVerdict v = lemma_important(kp, b, s, tup);
            if (!(v == qmtest::brute_classify(kp, b, tup))) ++mismatches;
            if (v.kind == TupleVerdict::Kind::Exceptional) {
              ++exceptional;
              for (int i = 1; i <= s; ++i)
                if (tup[static_cast<std::size_t>(i - 1)] != (s - i) * kp + b + 1) exceptional_shape = false;
            }
          });
          const std::string where =
              "s=" + std::to_string(s) + " k=" + std::to_string(kp) + " b=" + std::to_string(b);
          t.check(mismatches == 0, where + " mismatches=" + std::to_string(mismatches) + "/" + std::to_string(total));
          t.check(exceptional == 1 && exceptional_shape, where + " exceptional=" + std::to_string(exceptional));
          tuples += total;
        }
    t.note = ", " + std::to_string(tuples) + " tuples";
  });

  report(8, "partial-fraction constant terms against series expansion", [](Tally& t) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) continue;
        for (int k = -3; k <= 3; ++k) {
          FactorProduct f(3);
          f.den.push_back({k, ExponentVector::ratio(3, i, j)});
          const QRat expect(i < j ? 1 : 0);
          const std::string where = "1/(1 - q^" + std::to_string(k) + " x" + std::to_string(i) + "/x" + std::to_string(j) + ")";
          t.check(ct_pf_iterated(f) == expect && ct_series(f) == expect, where);
        }
      }
    qmtest::Gen g(20261016);
    int accepted = 0;
    while (accepted < 50) {
      FactorProduct f = qmtest::random_rational_kernel(g, static_cast<std::size_t>(g.uniform(2, 3)));
      QRat pf;
      try {
        pf = ct_pf_iterated(f);
      } catch (const DuplicateFactor&) {
        continue;
      } catch (const PositiveDegree&) {
        continue;
      }
      ++accepted;
      t.check(pf == ct_series(f), f.to_string());
    }
  });

  report(9, "alternating sum equals [nk, k-b-1], n <= 4, b < k <= 6", [](Tally& t) {
    for (int n = 1; n <= 4; ++n)
      for (int k = 1; k <= 6; ++k)
        for (int b = 0; b < k; ++b)
          t.check(prop52_lhs(n, b, k) == gauss_binom(n * k, k - b - 1),
                  "n=" + std::to_string(n) + " b=" + std::to_string(b) + " k=" + std::to_string(k));
  });

  report(10, "constant term as a sum over compositions", [](Tally& t) {
    for (int n = 1; n <= 2; ++n)
      for (int a = 1; a <= 2; ++a)
        for (int b = 0; b <= 1; ++b)
          for (int m = 0; m <= std::min(1, n); ++m)
            for (int l = 0; l <= std::min(1, n); ++l)
              for (int k = 1; k <= 2; ++k) {
                ParamSet p{n, a, b, m, l, k, {}};
                t.check(aomoto_expansion_check(p), p.to_string());
              }
  });

  report(11, "m = n reduction on n = 2 and the finite q-binomial theorem", [](Tally& t) {
    t.known_class = kKnownClass;
    const int n = 2;
    for (int a = 1; a <= 3; ++a)
      for (int b = 0; b <= 2; ++b)
        for (int l = 0; l <= n; ++l)
          for (int k = 0; k <= 2; ++k) {
            ParamSet full{n, a, b, n, l, k, {}};
            ParamSet reduced{n, a - 1, b + 1, 0, l, k, {}};
            MultiLaurent lhs = expand(build_hk_kernel(n, a, b, n, l, k));
            MultiLaurent rhs = expand(build_hk_kernel(n, a - 1, b + 1, 0, l, k));
            t.check(lhs == ml_subst(rhs, 0, 0, 1), full.to_string() + " kernel");
            t.check(lhs.ct_all() == rhs.ct_all(), full.to_string() + " constant term");
            t.check(morris_rhs(full) == morris_rhs(reduced), full.to_string() + " closed form", known_defect(full));
          }
    for (int N = 0; N <= 8; ++N) t.check(qbinomial_theorem_finite(N), "N=" + std::to_string(N));
  });

  return g_unexpected ? 1 : 0;
}
