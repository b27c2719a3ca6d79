#include "qmorris/ct_engine.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "qmorris/error.hpp"

namespace qmorris {

namespace {

using Terms = std::unordered_map<ExponentVector, QPoly, ExponentVectorHash>;

int chi(bool c) { return c ? 1 : 0; }

void accumulate(Terms* t, const ExponentVector& e, const QPoly& c) {
  auto [it, inserted] = t->try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t->erase(it);
  }
}

// Exponent range reachable by expanding a set of factors, per variable.
struct Range {
  std::array<int, kMaxVars> lo{};
  std::array<int, kMaxVars> hi{};

  void add(const ExponentVector& e) {
    for (std::size_t v = 0; v < e.size(); ++v) {
      lo[v] += std::min(0, e[v]);
      hi[v] += std::max(0, e[v]);
    }
  }
  void add(const Range& o) {
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      lo[v] += o.lo[v];
      hi[v] += o.hi[v];
    }
  }
};

Range range_of(const std::vector<AtomicFactor>& fs) {
  Range r;
  for (const auto& f : fs) r.add(f.mono);
  return r;
}

// Expands prod fs, keeping only terms x^alpha from which target is still
// reachable through the factors not yet multiplied in (the rest of fs and
// everything summarized by `other`).
Terms expand_toward(const std::vector<AtomicFactor>& fs, const Range& other, const ExponentVector& target) {
  const std::size_t nv = target.size();
  std::vector<Range> suffix(fs.size() + 1);
  suffix[fs.size()] = other;
  for (std::size_t i = fs.size(); i-- > 0;) {
    suffix[i] = suffix[i + 1];
    suffix[i].add(fs[i].mono);
  }
  auto feasible = [&](const ExponentVector& alpha, const Range& rem) {
    for (std::size_t v = 0; v < nv; ++v) {
      const int need = target[v] - alpha[v];
      if (need < rem.lo[v] || need > rem.hi[v]) return false;
    }
    return true;
  };
  Terms cur;
  if (feasible(ExponentVector(nv), suffix[0])) cur.emplace(ExponentVector(nv), QPoly(1));
  for (std::size_t i = 0; i < fs.size() && !cur.empty(); ++i) {
    const Range& rem = suffix[i + 1];
    Terms next;
    next.reserve(cur.size() * 2);
    for (const auto& [e, c] : cur) {
      if (feasible(e, rem)) accumulate(&next, e, c);
      const ExponentVector e2 = e + fs[i].mono;
      if (feasible(e2, rem)) accumulate(&next, e2, -c.shifted(fs[i].qexp));
    }
    cur = std::move(next);
  }
  return cur;
}

MultiLaurent keep_nonpositive(const MultiLaurent& p, std::size_t v) {
  MultiLaurent r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[v] <= 0) r.add_term(e, c);
  }
  return r;
}

std::vector<int> sample_window(const ParamSet& p) {
  const int a0 = p.m >= 1 ? 1 : 0;
  std::vector<int> out;
  for (int a = a0; a <= a0 + p.d(); ++a) out.push_back(a);
  return out;
}

Rational pow_rat(const Rational& base, int e) {
  if (e < 0) return 1 / pow_rat(base, -e);
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

bool is_exceptional_chain(const ChainState& c) {
  const int s = static_cast<int>(c.size());
  for (int i = 1; i <= s; ++i) {
    if (c.r[static_cast<std::size_t>(i - 1)] != i) return false;
    if (c.k[static_cast<std::size_t>(i - 1)] != (s - i) * c.kparam + c.b + 1) return false;
  }
  return s > 0;
}

std::optional<TupleVerdict> tuple_class_if_in_range(const ChainState& c) {
  const int s = static_cast<int>(c.size());
  const int top = (s - 1) * c.kparam + c.b + 1;
  for (int x : c.k) {
    if (x < 0 || x > top) return std::nullopt;
  }
  return lemma_important(c.kparam, c.b, s, c.k);
}

// The product at a node, with any zero surfaced as a numerator factor.
FactorProduct node_product(const FactorProduct& q_h, const ChainState& chain) {
  FactorProduct f = build_Q_chain(q_h, chain);
  if (f.is_zero()) f = build_Q_chain_raw(q_h, chain);
  return f;
}

QRat expanded_value(const FactorProduct& f, const ChainState& chain) {
  if (static_cast<int>(chain.size()) == chain.n) return pure_value(f);
  return ct_direct(f);
}

void add_children(const FactorProduct& q_h, CertificateNode* node, int first_r);

void process(const FactorProduct& q_h, CertificateNode* node) {
  const ChainState& c = node->chain;
  const FactorProduct f = node_product(q_h, c);
  if (auto w = detect_zero(f)) {
    node->verdict = Verdict::ZeroByFactor;
    node->witness = *w;
    node->tuple_class = tuple_class_if_in_range(c);
    node->value = QRat();
    return;
  }
  const int s = static_cast<int>(c.size());
  if (s == c.n) {
    node->verdict = Verdict::Expanded;
    node->value = expanded_value(f, c);
    return;
  }
  const int bound = (s - 1) * c.kparam + c.b + chi(s >= c.n - c.l + 1);
  const bool hyp = std::any_of(c.k.begin(), c.k.end(), [&](int x) { return x > bound; });
  const int rs = c.r.back();
  if (hyp && degree_in(f, static_cast<std::size_t>(rs)) < 0) {
    add_children(q_h, node, rs + 1);
    return;
  }
  if (is_exceptional_chain(c)) {
    node->verdict = Verdict::Expanded;
    node->value = expanded_value(f, c);
    return;
  }
  throw ImproperBranch("ct_recursion: chain " + c.to_string() + " is neither zero, proper, nor exceptional");
}

void add_children(const FactorProduct& q_h, CertificateNode* node, int first_r) {
  node->verdict = Verdict::Branch;
  const ChainState& c = node->chain;
  QRat total;
  for (int r = first_r; r <= c.n; ++r) {
    for (int kk = 0; kk <= c.h; ++kk) {
      if (kk == 0 && r > c.m) continue;
      CertificateNode child;
      child.chain = c.extended(r, kk);
      process(q_h, &child);
      total += child.value;
      node->children.push_back(std::move(child));
    }
  }
  node->value = total;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ZeroByFactor:
      return "zero";
    case Verdict::Expanded:
      return "expanded";
    case Verdict::Branch:
      return "branch";
  }
  return "?";
}

nlohmann::json node_json(const CertificateNode& n) {
  nlohmann::json j;
  j["chain"] = {{"r", n.chain.r}, {"k", n.chain.k}};
  j["verdict"] = verdict_name(n.verdict);
  if (n.witness) j["witness"] = n.witness->to_string();
  if (n.tuple_class) j["tuple_class"] = n.tuple_class->to_string();
  j["value"] = n.value.to_string();
  if (!n.children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const auto& c : n.children) j["children"].push_back(node_json(c));
  }
  return j;
}

void collect(const CertificateNode& n, Verdict v, std::vector<const CertificateNode*>* out) {
  if (n.verdict == v) out->push_back(&n);
  for (const auto& c : n.children) collect(c, v, out);
}

bool check_node(const FactorProduct& q_h, const CertificateNode& n, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = n.chain.to_string() + ": " + msg;
    return false;
  };
  switch (n.verdict) {
    case Verdict::ZeroByFactor: {
      if (!n.witness || !n.witness->is_zero()) return fail("witness is not the zero factor");
      if (!n.value.is_zero()) return fail("zero leaf carries a nonzero value");
      const FactorProduct f = node_product(q_h, n.chain);
      if (std::find(f.num.begin(), f.num.end(), *n.witness) == f.num.end()) {
        return fail("witness absent from the rebuilt numerator");
      }
      return true;
    }
    case Verdict::Expanded: {
      if (!(expanded_value(node_product(q_h, n.chain), n.chain) == n.value)) return fail("leaf value not reproduced");
      return true;
    }
    case Verdict::Branch: {
      QRat total;
      for (const auto& c : n.children) {
        if (c.chain.size() != n.chain.size() + 1 ||
            !std::equal(n.chain.r.begin(), n.chain.r.end(), c.chain.r.begin()) ||
            !std::equal(n.chain.k.begin(), n.chain.k.end(), c.chain.k.begin())) {
          return fail("child chain does not extend its parent");
        }
        if (!check_node(q_h, c, why)) return false;
        total += c.value;
      }
      if (!(total == n.value)) return fail("branch value differs from the sum of its children");
      return true;
    }
  }
  return fail("unknown verdict");
}

std::mutex g_sample_mutex;
std::map<std::tuple<int, int, int, int, int, int>, QRat> g_samples;

}  // namespace

QRat ct_direct(const FactorProduct& f) {
  if (f.is_zero()) return QRat();
  const FactorProduct g = absorb_pure(cancel(f));
  if (g.is_zero()) return QRat();
  if (!g.den.empty()) throw NotPolynomial("ct_direct: denominator " + g.den.front().to_string() + " survives cancellation");
  const ExponentVector target = -g.premono.x;
  std::vector<AtomicFactor> fs = g.num;
  std::sort(fs.begin(), fs.end(), [](const AtomicFactor& x, const AtomicFactor& y) {
    if (auto c = x.mono <=> y.mono; c != 0) return c < 0;
    return x.qexp < y.qexp;
  });
  const auto half = static_cast<std::ptrdiff_t>(fs.size() / 2);
  const std::vector<AtomicFactor> lo(fs.begin(), fs.begin() + half);
  const std::vector<AtomicFactor> hi(fs.begin() + half, fs.end());
  const Terms ta = expand_toward(lo, range_of(hi), target);
  if (ta.empty()) return QRat();
  const Terms tb = expand_toward(hi, range_of(lo), target);
  QPoly sum;
  for (const auto& [e, c] : tb) {
    auto it = ta.find(target - e);
    if (it != ta.end()) sum += it->second * c;
  }
  return g.prefactor * QRat(sum);
}

QRat ct_series(const FactorProduct& f) {
  if (f.is_zero()) return QRat();
  const FactorProduct g = absorb_pure(cancel(f));
  if (g.is_zero()) return QRat();
  const std::size_t nv = g.nvars();
  MultiLaurent p = MultiLaurent::monomial(g.premono.x, QPoly(1));
  for (const auto& x : g.num) p.mul_binomial(x.qexp, x.mono);
  for (std::size_t v = 0; v < nv; ++v) {
    bool any = false;
    for (const auto& d : g.den) {
      if (d.mono.lowest_var() != v) continue;
      if (!any) p = keep_nonpositive(p, v);
      any = true;
      // 1/(1 - M) = sum_t M^t with M small in x_v; x_v-exponents only grow.
      const MultiLaurent step = MultiLaurent::monomial(d.mono, QPoly::monomial(1, d.qexp));
      MultiLaurent acc = p;
      MultiLaurent term = p;
      while (!term.is_zero()) {
        term = keep_nonpositive(term * step, v);
        acc += term;
      }
      p = std::move(acc);
    }
    p = p.ct_var(v);
  }
  return g.prefactor * QRat(p.coeff(ExponentVector(nv)));
}

MonomialClass classify_monomial(int /*s*/, std::size_t i, std::size_t j) {
  if (i == j) throw DomainError("classify_monomial: i = j");
  return i < j ? MonomialClass::Small : MonomialClass::Large;
}

std::vector<FactorProduct> pf_ct_step(const FactorProduct& f, std::size_t var) {
  if (var >= f.nvars()) throw DomainError("pf_ct_step: variable index out of range");
  if (f.is_zero()) return {};
  FactorProduct g = cancel(f);
  struct Pole {
    std::size_t t;
    int u;
    std::size_t idx;
  };
  std::vector<Pole> poles;
  for (std::size_t idx = 0; idx < g.den.size(); ++idx) {
    AtomicFactor& d = g.den[idx];
    const int ev = d.mono[var];
    if (ev == 0) continue;
    std::size_t t = d.mono.size();
    bool shaped = ev == 1 || ev == -1;
    for (std::size_t w = 0; shaped && w < d.mono.size(); ++w) {
      if (w == var || d.mono[w] == 0) continue;
      if (d.mono[w] != -ev || t != d.mono.size()) shaped = false;
      t = w;
    }
    if (!shaped || t == d.mono.size()) {
      throw DomainError("pf_ct_step: denominator factor " + d.to_string() + " is not of the form 1 - q^u x_i/x_j");
    }
    if (ev < 0) {
      // 1/(1 - q^s x_t/x_var) = -q^-s x_var/x_t / (1 - q^-s x_var/x_t)
      g.premono *= Monomial(-1, -d.qexp, -d.mono);
      d = {-d.qexp, -d.mono};
    }
    poles.push_back({t, d.qexp, idx});
  }
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      if (poles[i].t == poles[j].t && poles[i].u == poles[j].u) {
        throw DuplicateFactor("pf_ct_step: repeated pole " + g.den[poles[i].idx].to_string());
      }
    }
  }
  const int deg = degree_in(g, var);
  if (deg > 0) throw PositiveDegree("pf_ct_step: degree " + std::to_string(deg) + " in x" + std::to_string(var));

  std::vector<FactorProduct> out;
  if (deg == 0) {
    // Limit x_var -> infinity: each factor tends to its leading monomial or to 1.
    FactorProduct lim(g.nvars());
    lim.prefactor = g.prefactor;
    lim.premono = g.premono;
    for (const auto& x : g.num) {
      if (x.mono[var] > 0) {
        lim.premono *= Monomial(-1, x.qexp, x.mono);
      } else if (x.mono[var] == 0) {
        lim.num.push_back(x);
      }
    }
    for (const auto& x : g.den) {
      if (x.mono[var] > 0) {
        lim.premono *= Monomial(-1, x.qexp, x.mono).inverse();
      } else if (x.mono[var] == 0) {
        lim.den.push_back(x);
      }
    }
    if (lim.premono.x[var] != 0) throw Error("pf_ct_step: limit term still depends on the variable (internal)");
    out.push_back(std::move(lim));
  }
  for (const auto& pole : poles) {
    if (classify_monomial(pole.u, var, pole.t) != MonomialClass::Small) continue;
    FactorProduct r = g;
    r.den.erase(r.den.begin() + static_cast<std::ptrdiff_t>(pole.idx));
    out.push_back(substitute(r, var, pole.t, -pole.u));
  }
  return out;
}

QRat ct_pf_iterated(const FactorProduct& f) {
  std::vector<FactorProduct> terms{f};
  for (std::size_t v = 0; v < f.nvars(); ++v) {
    std::vector<FactorProduct> next;
    for (const auto& t : terms) {
      if (t.is_zero() || detect_zero(t)) continue;
      for (auto& r : pf_ct_step(t, v)) next.push_back(std::move(r));
    }
    terms = std::move(next);
  }
  QRat sum;
  for (const auto& t : terms) {
    if (!detect_zero(t)) sum += pure_value(t);
  }
  return sum;
}

std::string TupleVerdict::to_string() const {
  switch (kind) {
    case Kind::EarlySmall:
      return "EarlySmall(" + std::to_string(i) + ")";
    case Kind::ClosePair:
      return "ClosePair(" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::Exceptional:
      return "Exceptional";
  }
  return "?";
}

TupleVerdict lemma_important(int kparam, int b, int s, std::span<const int> tuple) {
  if (s < 1 || static_cast<std::size_t>(s) != tuple.size()) throw DomainError("lemma_important: tuple length must be s >= 1");
  if (kparam < 0 || b < 0) throw DomainError("lemma_important: need k, b >= 0");
  const int top = (s - 1) * kparam + b + 1;
  for (int x : tuple) {
    if (x < 0 || x > top) throw DomainError("lemma_important: entry outside 0.." + std::to_string(top));
  }
  for (int i = 0; i < s; ++i) {
    if (tuple[static_cast<std::size_t>(i)] <= b) return {TupleVerdict::Kind::EarlySmall, i + 1, 0};
  }
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      const int diff = tuple[static_cast<std::size_t>(j)] - tuple[static_cast<std::size_t>(i)];
      if (1 - kparam <= diff && diff <= kparam) return {TupleVerdict::Kind::ClosePair, i + 1, j + 1};
    }
  }
  for (int i = 1; i <= s; ++i) {
    if (tuple[static_cast<std::size_t>(i - 1)] != (s - i) * kparam + b + 1) {
      throw Error("lemma_important: unclassified tuple (internal)");
    }
  }
  return {};
}

std::size_t RecursionCertificate::count(Verdict v) const { return leaves(v).size(); }

std::vector<const CertificateNode*> RecursionCertificate::leaves(Verdict v) const {
  std::vector<const CertificateNode*> out;
  collect(root, v, &out);
  return out;
}

std::string RecursionCertificate::to_json(int indent) const {
  nlohmann::json j;
  j["params"] = {{"n", params.n}, {"b", params.b}, {"m", params.m}, {"l", params.l}, {"k", params.k}};
  j["h"] = h;
  j["value"] = root.value.to_string();
  j["root"] = node_json(root);
  return j.dump(indent);
}

RecursionResult ct_recursion(const ParamSet& p, int h) {
  p.validate();
  if (p.m >= p.n || p.l >= p.n) throw DomainError("ct_recursion: need 0 <= m,l < n");
  if (p.k <= p.b + 1) throw DomainError("ct_recursion: need k > b + 1");
  const auto roots = vanishing_sets(p).all();
  if (h != p.h_extra() && std::find(roots.begin(), roots.end(), h) == roots.end()) {
    throw DomainError("ct_recursion: h = " + std::to_string(h) + " is neither a root nor the extra point");
  }
  const FactorProduct q_h = build_Q(h, p.n, p.b, p.m, p.l, p.k);
  if (degree_in(q_h, 0) >= 0) throw ImproperBranch("ct_recursion: Q(h) is not proper in x0");
  RecursionResult res;
  res.certificate.params = p;
  res.certificate.h = h;
  CertificateNode& root = res.certificate.root;
  root.chain = ChainState{{}, {}, h, p.n, p.b, p.m, p.l, p.k};
  add_children(q_h, &root, 1);
  res.value = root.value;
  return res;
}

bool revalidate(const RecursionCertificate& cert, std::string* why) {
  const ParamSet& p = cert.params;
  const FactorProduct q_h = build_Q(cert.h, p.n, p.b, p.m, p.l, p.k);
  if (cert.root.verdict != Verdict::Branch || !cert.root.chain.r.empty()) {
    if (why) *why = "root is not the branching empty chain";
    return false;
  }
  return check_node(q_h, cert.root, why);
}

std::vector<std::pair<int, QRat>> hk_ct_samples(const ParamSet& p) {
  p.validate();
  std::vector<std::pair<int, QRat>> out;
  for (int a : sample_window(p)) {
    const auto key = std::make_tuple(p.n, p.b, p.m, p.l, p.k, a);
    {
      std::lock_guard<std::mutex> lock(g_sample_mutex);
      auto it = g_samples.find(key);
      if (it != g_samples.end()) {
        out.emplace_back(a, it->second);
        continue;
      }
    }
    QRat v = ct_direct(build_hk_kernel(p.n, a, p.b, p.m, p.l, p.k));
    {
      std::lock_guard<std::mutex> lock(g_sample_mutex);
      g_samples.emplace(key, v);
    }
    out.emplace_back(a, std::move(v));
  }
  return out;
}

int InterpolatedPoly::degree() const { return static_cast<int>(coeffs.size()) - 1; }

Rational InterpolatedPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
  return acc;
}

InterpolatedPoly interp_in_qa(const ParamSet& p) {
  if (!p.q0) throw DomainError("interp_in_qa: q0 not set");
  const Rational q0 = *p.q0;
  if (q0 == 0 || q0 == 1 || q0 == -1) throw DomainError("interp_in_qa: q0 must avoid 0 and +-1");
  const auto samples = hk_ct_samples(p);
  const std::size_t n = samples.size();
  std::vector<Rational> xs(n);
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = pow_rat(q0, samples[i].first);
    c[i] = samples[i].second.eval(q0);
  }
  // Newton divided differences, then expansion into the power basis.
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
  }
  std::vector<Rational> poly{c[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t e = 0; e < poly.size(); ++e) {
      next[e + 1] += poly[e];
      next[e] -= poly[e] * xs[i];
    }
    next[0] += c[i];
    poly = std::move(next);
  }
  while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
  InterpolatedPoly out;
  out.coeffs = std::move(poly);
  out.q0 = q0;
  out.params = p;
  return out;
}

Rational mprime_at(const ParamSet& p, int h, const Rational& q0) {
  ParamSet ps = p;
  ps.q0 = q0;
  return interp_in_qa(ps)(pow_rat(q0, -h));
}

bool aomoto_expansion_check(const ParamSet& p) {
  const auto [lhs, rhs] = aomoto_expansion_sides(p);
  return lhs == rhs;
}

std::pair<QRat, QRat> aomoto_expansion_sides(const ParamSet& p) {
  p.validate();
  if (p.a < chi(p.m >= 1)) throw DomainError("aomoto_expansion_check: need a >= 1 when m >= 1");
  const int n = p.n;
  const QRat lhs = ct_direct(build_hk_kernel(n, p.a, p.b, p.m, p.l, p.k));
  const FactorProduct pairwise = build_hk_kernel(n, 0, 0, 0, 0, p.k);
  std::vector<int> bstar(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) bstar[static_cast<std::size_t>(i)] = p.b + chi(i >= n - p.l + 1);

  QRat rhs;
  std::vector<int> ks(static_cast<std::size_t>(n) + 1, 0);
  // Depth-first over compositions k_1 + ... + k_n = d with k_i <= a + b*_i.
  auto visit = [&](auto&& self, int i, int left) -> void {
    const auto ui = static_cast<std::size_t>(i);
    if (i == n) {
      if (left > p.a + bstar[ui]) return;
      ks[ui] = left;
      QRat coef = 1;
      FactorProduct l = pairwise;
      for (int j = 1; j <= n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        const int bs = bstar[uj];
        const int kj = ks[uj];
        coef *= gauss_binom(p.a + bs, kj);
        l.premono.qexp += (bs + 1) * bs / 2 + kj * (kj - 1) / 2 - kj * bs;
        l.premono.x[uj] = bs + chi(j <= p.m) - kj;
      }
      rhs += coef * ct_direct(l);
      return;
    }
    for (int x = 0; x <= std::min(left, p.a + bstar[ui]); ++x) {
      ks[ui] = x;
      self(self, i + 1, left - x);
    }
  };
  visit(visit, 1, p.d());
  return {lhs, rhs};
}

}  // namespace qmorris
