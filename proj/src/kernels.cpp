#include "qmorris/kernels.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

#include "qmorris/error.hpp"

namespace qmorris {

namespace {

Rational pow_rat(const Rational& base, int e) {
  if (e == 0) return 1;
  if (base == 0) {
    if (e < 0) throw DivisionByZero("evaluate: zero raised to a negative power");
    return 0;
  }
  Rational b = e > 0 ? base : Rational(1) / base;
  unsigned u = static_cast<unsigned>(e > 0 ? e : -e);
  Rational r = 1;
  while (u != 0) {
    if (u & 1U) r *= b;
    b *= b;
    u >>= 1U;
  }
  return r;
}

Rational eval_monomial(int qexp, const ExponentVector& mono, const Rational& q0, std::span<const Rational> point) {
  Rational v = pow_rat(q0, qexp);
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (mono[i] != 0) v *= pow_rat(point[i], mono[i]);
  }
  return v;
}

void append(std::vector<AtomicFactor>* out, const std::vector<AtomicFactor>& more) {
  out->insert(out->end(), more.begin(), more.end());
}

// Multiset difference a \ b on sorted ranges, returning both remainders.
void multiset_cancel(std::vector<AtomicFactor>* a, std::vector<AtomicFactor>* b) {
  std::sort(a->begin(), a->end());
  std::sort(b->begin(), b->end());
  std::vector<AtomicFactor> ra;
  std::vector<AtomicFactor> rb;
  std::set_difference(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(ra));
  std::set_difference(b->begin(), b->end(), a->begin(), a->end(), std::back_inserter(rb));
  *a = std::move(ra);
  *b = std::move(rb);
}

void check_nvars(int n) {
  if (n < 1 || static_cast<std::size_t>(n) + 1 > kMaxVars) {
    throw DomainError("kernel: n must be in 1.." + std::to_string(kMaxVars - 1));
  }
}

}  // namespace

std::string AtomicFactor::to_string() const {
  std::string m;
  if (qexp != 0) m = qexp == 1 ? "q" : "q^" + std::to_string(qexp);
  if (!mono.is_zero()) m += (m.empty() ? "" : "*") + mono.to_string();
  if (m.empty()) m = "1";
  return "(1 - " + m + ")";
}

Monomial& Monomial::operator*=(const Monomial& o) {
  sign *= o.sign;
  qexp += o.qexp;
  x += o.x;
  return *this;
}

std::string Monomial::to_string() const {
  std::string s = sign < 0 ? "-" : "";
  s += "q^" + std::to_string(qexp);
  if (!x.is_zero()) s += "*" + x.to_string();
  return s;
}

FactorProduct FactorProduct::zero(std::size_t nvars) {
  FactorProduct f(nvars);
  f.prefactor = QRat();
  return f;
}

FactorProduct& FactorProduct::operator*=(const FactorProduct& o) {
  if (o.nvars() != nvars()) throw DomainError("FactorProduct: nvars mismatch");
  prefactor *= o.prefactor;
  premono *= o.premono;
  append(&num, o.num);
  append(&den, o.den);
  return *this;
}

std::string FactorProduct::to_string() const {
  if (is_zero()) return "0";
  std::string s = prefactor.to_string() + " * " + premono.to_string();
  s += " * [";
  for (std::size_t i = 0; i < num.size(); ++i) s += (i ? ", " : "") + num[i].to_string();
  s += "] / [";
  for (std::size_t i = 0; i < den.size(); ++i) s += (i ? ", " : "") + den[i].to_string();
  s += "]";
  return s;
}

void ChainState::validate() const {
  if (r.size() != k.size()) throw DomainError("ChainState: r and k differ in length");
  if (r.size() > static_cast<std::size_t>(n)) throw DomainError("ChainState: chain longer than n");
  int prev = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] <= prev || r[i] > n) throw DomainError("ChainState: r must increase within 1..n");
    if (k[i] < 0 || k[i] > h) throw DomainError("ChainState: k_i outside 0..h");
    prev = r[i];
  }
}

ChainState ChainState::extended(int r_next, int k_next) const {
  ChainState c = *this;
  c.r.push_back(r_next);
  c.k.push_back(k_next);
  return c;
}

std::string ChainState::to_string() const {
  std::string s = "r=(";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  s += ") k=(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

std::vector<AtomicFactor> pochhammer(int qshift, const ExponentVector& mono, int length) {
  if (length < 0) throw DomainError("pochhammer: negative length");
  std::vector<AtomicFactor> out;
  out.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) out.push_back({qshift + i, mono});
  return out;
}

FactorProduct build_hk_kernel(int n, int a, int b, int m, int l, int k) {
  check_nvars(n);
  if (a < 0 || b < 0 || k < 0 || m < 0 || l < 0 || m > n || l > n) {
    throw DomainError("build_hk_kernel: parameters out of range");
  }
  if (m >= 1 && a < 1) throw DomainError("build_hk_kernel: a >= 1 required when m >= 1");
  const std::size_t nv = static_cast<std::size_t>(n) + 1;
  FactorProduct f(nv);
  for (int i = 1; i <= n; ++i) {
    const int low = i <= m ? 1 : 0;
    const int high = i >= n - l + 1 ? 1 : 0;
    const auto ui = static_cast<std::size_t>(i);
    append(&f.num, pochhammer(low, ExponentVector::ratio(nv, 0, ui), a - low));
    append(&f.num, pochhammer(1 - low, ExponentVector::ratio(nv, ui, 0), b + low + high));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      append(&f.num, pochhammer(0, ExponentVector::ratio(nv, ui, uj), k));
      append(&f.num, pochhammer(1, ExponentVector::ratio(nv, uj, ui), k));
    }
  }
  return f;
}

FactorProduct build_qdyson_kernel(std::span<const int> a) {
  if (a.empty() || a.size() > kMaxVars) throw DomainError("build_qdyson_kernel: bad variable count");
  const std::size_t nv = a.size();
  FactorProduct f(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (a[i] < 0) throw DomainError("build_qdyson_kernel: negative exponent");
    for (std::size_t j = i + 1; j < nv; ++j) {
      append(&f.num, pochhammer(0, ExponentVector::ratio(nv, i, j), a[i]));
      append(&f.num, pochhammer(1, ExponentVector::ratio(nv, j, i), a[j]));
    }
  }
  return f;
}

FactorProduct build_dyson_kernel(std::span<const int> a) {
  if (a.empty() || a.size() > kMaxVars) throw DomainError("build_dyson_kernel: bad variable count");
  const std::size_t nv = a.size();
  FactorProduct f(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (a[i] < 0) throw DomainError("build_dyson_kernel: negative exponent");
    for (std::size_t j = i + 1; j < nv; ++j) {
      f.num.insert(f.num.end(), static_cast<std::size_t>(a[i]), AtomicFactor{0, ExponentVector::ratio(nv, i, j)});
      f.num.insert(f.num.end(), static_cast<std::size_t>(a[j]), AtomicFactor{0, ExponentVector::ratio(nv, j, i)});
    }
  }
  return f;
}

FactorProduct build_Q(int h, int n, int b, int m, int l, int k) {
  check_nvars(n);
  if (h < 0 || b < 0 || k < 0 || m < 0 || l < 0 || m >= n || l >= n) {
    throw DomainError("build_Q: parameters out of range (need h,b,k >= 0 and 0 <= m,l < n)");
  }
  const std::size_t nv = static_cast<std::size_t>(n) + 1;
  FactorProduct f(nv);
  for (int i = 1; i <= n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const int high = i >= n - l + 1 ? 1 : 0;
    const auto up = ExponentVector::ratio(nv, ui, 0);
    const auto down = ExponentVector::ratio(nv, 0, ui);
    if (i <= m) {
      append(&f.num, pochhammer(0, up, b + 1 + high));
      for (int j = 0; j <= h; ++j) f.den.push_back({-j, down});
    } else {
      append(&f.num, pochhammer(1, up, b + high));
      for (int j = 1; j <= h; ++j) f.den.push_back({-j, down});
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      append(&f.num, pochhammer(0, ExponentVector::ratio(nv, ui, uj), k));
      append(&f.num, pochhammer(1, ExponentVector::ratio(nv, uj, ui), k));
    }
  }
  return f;
}

namespace {

// Applies the chain substitution to one (qexp, mono) pair in place.
void substitute_chain(const ChainState& chain, int* qexp, ExponentVector* mono) {
  const std::size_t s = chain.size();
  if (s == 0) return;
  const auto rs = static_cast<std::size_t>(chain.r[s - 1]);
  const int ks = chain.k[s - 1];
  auto move = [&](std::size_t var, int ki) {
    const int e = (*mono)[var];
    if (e == 0) return;
    (*mono)[var] = 0;
    (*mono)[rs] += e;
    *qexp += e * (ks - ki);
  };
  move(0, 0);
  for (std::size_t i = 0; i + 1 < s; ++i) move(static_cast<std::size_t>(chain.r[i]), chain.k[i]);
}

}  // namespace

FactorProduct apply_E(const FactorProduct& f, const ChainState& chain) {
  chain.validate();
  if (f.nvars() != static_cast<std::size_t>(chain.n) + 1) throw DomainError("apply_E: nvars mismatch");
  FactorProduct g = f;
  for (auto& x : g.num) substitute_chain(chain, &x.qexp, &x.mono);
  for (auto& x : g.den) substitute_chain(chain, &x.qexp, &x.mono);
  substitute_chain(chain, &g.premono.qexp, &g.premono.x);
  return g;
}

FactorProduct build_Q_chain(const ChainState& chain) {
  return build_Q_chain(build_Q(chain.h, chain.n, chain.b, chain.m, chain.l, chain.kparam), chain);
}

FactorProduct build_Q_chain(const FactorProduct& q_h, const ChainState& chain) {
  chain.validate();
  const std::size_t nv = static_cast<std::size_t>(chain.n) + 1;
  if (q_h.nvars() != nv) throw DomainError("build_Q_chain: Q(h) has the wrong variable count");
  const std::size_t s = chain.size();
  if (s > 0 && chain.r[s - 1] > chain.m) {
    if (std::find(chain.k.begin(), chain.k.end(), 0) != chain.k.end()) return FactorProduct::zero(nv);
  }
  return build_Q_chain_raw(q_h, chain);
}

FactorProduct build_Q_chain_raw(const FactorProduct& q_h, const ChainState& chain) {
  chain.validate();
  const std::size_t nv = static_cast<std::size_t>(chain.n) + 1;
  if (q_h.nvars() != nv) throw DomainError("build_Q_chain: Q(h) has the wrong variable count");
  const std::size_t s = chain.size();
  FactorProduct g = q_h;
  for (std::size_t i = 0; i < s; ++i) {
    const AtomicFactor target{-chain.k[i], ExponentVector::ratio(nv, 0, static_cast<std::size_t>(chain.r[i]))};
    auto it = std::find(g.den.begin(), g.den.end(), target);
    if (it == g.den.end()) {
      throw DomainError("build_Q_chain: matched factor " + target.to_string() + " absent from denominator");
    }
    g.den.erase(it);
  }
  g = apply_E(g, chain);
  for (const auto& d : g.den) {
    if (d.is_zero()) throw DivisionByZero("build_Q_chain: a denominator factor vanishes after substitution");
  }
  return g;
}

std::optional<AtomicFactor> detect_zero(const FactorProduct& f) {
  for (const auto& x : f.num) {
    if (x.is_zero()) return x;
  }
  return std::nullopt;
}

AtomicFactor orient_canonical(const AtomicFactor& f, Monomial* mult) {
  const std::size_t low = f.mono.lowest_var();
  const bool flip = low < f.mono.size() ? f.mono[low] < 0 : f.qexp < 0;
  if (!flip) {
    *mult = Monomial(f.mono.size());
    return f;
  }
  // 1 - c = -c (1 - 1/c)
  *mult = Monomial(-1, f.qexp, f.mono);
  return {-f.qexp, -f.mono};
}

FactorProduct cancel(const FactorProduct& f) {
  FactorProduct g = f;
  Monomial mult;
  for (auto& x : g.num) {
    x = orient_canonical(x, &mult);
    g.premono *= mult;
  }
  for (auto& x : g.den) {
    x = orient_canonical(x, &mult);
    g.premono *= mult.inverse();
  }
  multiset_cancel(&g.num, &g.den);
  return g;
}

FactorProduct absorb_pure(const FactorProduct& f) {
  FactorProduct g(f.nvars());
  CyclotomicProduct pure;
  pure.mul_monomial(f.premono.sign, f.premono.qexp);
  for (const auto& x : f.num) {
    if (x.is_pure()) {
      pure.mul_one_minus_q(x.qexp, 1);
    } else {
      g.num.push_back(x);
    }
  }
  for (const auto& x : f.den) {
    if (x.is_pure()) {
      pure.mul_one_minus_q(x.qexp, -1);
    } else {
      g.den.push_back(x);
    }
  }
  g.premono.x = f.premono.x;
  g.prefactor = pure.is_zero() ? QRat() : f.prefactor * pure.to_qrat();
  if (g.prefactor.is_zero()) return FactorProduct::zero(f.nvars());
  return g;
}

QRat pure_value(const FactorProduct& f) {
  if (f.is_zero()) return QRat();
  const FactorProduct g = absorb_pure(f);
  if (!g.num.empty() || !g.den.empty() || !g.premono.x.is_zero()) {
    throw DomainError("pure_value: product still depends on x");
  }
  return g.prefactor;
}

MultiLaurent expand(const FactorProduct& f) {
  const std::size_t nv = f.nvars();
  if (f.is_zero()) return MultiLaurent(nv);
  const FactorProduct g = absorb_pure(cancel(f));
  if (g.is_zero()) return MultiLaurent(nv);
  if (!g.den.empty()) throw NotPolynomial("expand: denominator " + g.den.front().to_string() + " survives cancellation");
  if (!g.prefactor.is_poly()) throw NotPolynomial("expand: scalar part is not a Laurent polynomial in q");
  MultiLaurent out = MultiLaurent::monomial(g.premono.x, g.prefactor.num());
  for (const auto& x : g.num) out.mul_binomial(x.qexp, x.mono);
  return out;
}

int degree_in(const FactorProduct& f, std::size_t i) {
  if (i >= f.nvars()) throw DomainError("degree_in: variable index out of range");
  int d = f.premono.x[i];
  for (const auto& x : f.num) d += std::max(x.mono[i], 0);
  for (const auto& x : f.den) d -= std::max(x.mono[i], 0);
  return d;
}

FactorProduct substitute(const FactorProduct& f, std::size_t i, std::size_t j, int s) {
  if (i >= f.nvars() || j >= f.nvars()) throw DomainError("substitute: variable index out of range");
  FactorProduct g = f;
  auto apply = [&](int* qexp, ExponentVector* mono) {
    const int e = (*mono)[i];
    if (e == 0) return;
    (*mono)[i] = 0;
    (*mono)[j] += e;
    *qexp += s * e;
  };
  for (auto& x : g.num) apply(&x.qexp, &x.mono);
  for (auto& x : g.den) apply(&x.qexp, &x.mono);
  apply(&g.premono.qexp, &g.premono.x);
  return g;
}

Rational evaluate(const FactorProduct& f, const Rational& q0, std::span<const Rational> point) {
  if (point.size() != f.nvars()) throw DomainError("evaluate: point has the wrong dimension");
  if (f.is_zero()) return 0;
  Rational v = f.prefactor.eval(q0) * f.premono.sign * eval_monomial(f.premono.qexp, f.premono.x, q0, point);
  for (const auto& x : f.num) v *= 1 - eval_monomial(x.qexp, x.mono, q0, point);
  for (const auto& x : f.den) {
    const Rational d = 1 - eval_monomial(x.qexp, x.mono, q0, point);
    if (d == 0) throw DivisionByZero("evaluate: pole at the evaluation point");
    v /= d;
  }
  return v;
}

}  // namespace qmorris
