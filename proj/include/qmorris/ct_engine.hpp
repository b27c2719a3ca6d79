#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmorris/closed_forms.hpp"
#include "qmorris/kernels.hpp"

namespace qmorris {

/// Iterated constant term over every variable of a polynomial kernel.
/// Throws NotPolynomial if cancel() leaves an x-dependent denominator.
QRat ct_direct(const FactorProduct& f);

/// Iterated constant term of a rational kernel in the field of iterated
/// Laurent series with x0 << x1 << ... (x_i/x_j small for i < j), computed
/// by truncated geometric expansion of every denominator factor.
QRat ct_series(const FactorProduct& f);

enum class MonomialClass { Small, Large };

/// q^s x_i/x_j is small iff i < j. Throws DomainError for i = j.
MonomialClass classify_monomial(int s, std::size_t i, std::size_t j);

/// One partial-fraction constant-term step in x_var. Each denominator factor
/// involving x_var must be (1 - q^u x_var/x_t)^{+-1}-shaped with pairwise
/// distinct poles. Returns the residues at small poles, plus the limit term
/// when the degree in x_var is 0.
std::vector<FactorProduct> pf_ct_step(const FactorProduct& f, std::size_t var);

/// pf_ct_step over x0, x1, ... in turn, summed.
QRat ct_pf_iterated(const FactorProduct& f);

struct TupleVerdict {
  enum class Kind { EarlySmall, ClosePair, Exceptional };
  Kind kind = Kind::Exceptional;
  int i = 0;  // 1-based
  int j = 0;  // 1-based, ClosePair only

  std::string to_string() const;
  friend bool operator==(const TupleVerdict&, const TupleVerdict&) = default;
};

/// Classifies a shift tuple (k_1..k_s) with entries in 0..(s-1)kparam+b+1.
TupleVerdict lemma_important(int kparam, int b, int s, std::span<const int> tuple);

enum class Verdict { ZeroByFactor, Expanded, Branch };

struct CertificateNode {
  ChainState chain;
  Verdict verdict = Verdict::Branch;
  std::optional<AtomicFactor> witness;  // ZeroByFactor
  std::optional<TupleVerdict> tuple_class;  // ZeroByFactor, when the shifts are in range
  QRat value;                           // Expanded: the leaf value; Branch: sum of children
  std::vector<CertificateNode> children;
};

struct RecursionCertificate {
  ParamSet params;
  int h = 0;
  CertificateNode root;

  std::size_t count(Verdict v) const;
  /// Leaves with the given verdict, depth-first in branching order.
  std::vector<const CertificateNode*> leaves(Verdict v) const;
  std::string to_json(int indent = -1) const;
};

struct RecursionResult {
  QRat value;
  RecursionCertificate certificate;
};

/// CT over all x of Q(h), expanded along residue chains. Requires k > b + 1,
/// 0 <= m,l < n and h in D1 u D2 u D3 or h = h_extra().
RecursionResult ct_recursion(const ParamSet& p, int h);

/// Rebuilds every leaf from its chain: ZeroByFactor witnesses must be zero
/// factors of the rebuilt product, Expanded values must be reproduced, and
/// Branch values must be the sum of their children.
bool revalidate(const RecursionCertificate& cert, std::string* why = nullptr);

/// CT of the kernel at every sample a (a = 0..d, or 1..d+1 when m >= 1).
/// Results are cached per parameter tuple.
std::vector<std::pair<int, QRat>> hk_ct_samples(const ParamSet& p);

/// Polynomial in t = q0^a through the specialized samples.
struct InterpolatedPoly {
  std::vector<Rational> coeffs;  // coeffs[i] multiplies t^i
  Rational q0;
  ParamSet params;

  int degree() const;
  Rational operator()(const Rational& t) const;
};

/// Requires p.q0 with q0 not in {0, 1, -1}.
InterpolatedPoly interp_in_qa(const ParamSet& p);

/// Interpolated constant term at a = -h, i.e. at t = q0^-h.
Rational mprime_at(const ParamSet& p, int h, const Rational& q0);

/// Kernel constant term (first) and the composition sum (second).
std::pair<QRat, QRat> aomoto_expansion_sides(const ParamSet& p);

/// Compares the kernel constant term against the sum over compositions
/// k_1 + ... + k_n = nb + m + l of prod [a + b*_i choose k_i] CT L(x; k).
bool aomoto_expansion_check(const ParamSet& p);

}  // namespace qmorris
