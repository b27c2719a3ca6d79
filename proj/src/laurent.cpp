#include "qmorris/laurent.hpp"

#include <algorithm>
#include <vector>

#include "qmorris/error.hpp"

namespace qmorris {

ExponentVector::ExponentVector(std::size_t nvars) {
  if (nvars == 0 || nvars > kMaxVars) {
    throw DomainError("ExponentVector: variable count must be in 1.." + std::to_string(kMaxVars));
  }
  n_ = static_cast<std::uint8_t>(nvars);
}

ExponentVector::ExponentVector(std::initializer_list<int> exps) : ExponentVector(exps.size()) {
  std::size_t i = 0;
  for (int e : exps) e_[i++] = e;
}

ExponentVector ExponentVector::unit(std::size_t nvars, std::size_t i, int e) {
  ExponentVector v(nvars);
  if (i >= nvars) throw DomainError("ExponentVector::unit: index out of range");
  v.e_[i] = e;
  return v;
}

ExponentVector ExponentVector::ratio(std::size_t nvars, std::size_t i, std::size_t j) {
  ExponentVector v = unit(nvars, i, 1);
  if (j >= nvars) throw DomainError("ExponentVector::ratio: index out of range");
  v.e_[j] -= 1;
  return v;
}

bool ExponentVector::is_zero() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (e_[i] != 0) return false;
  }
  return true;
}

std::size_t ExponentVector::lowest_var() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (e_[i] != 0) return i;
  }
  return n_;
}

int ExponentVector::total_degree() const {
  int s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += e_[i];
  return s;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& o) {
  for (std::size_t i = 0; i < n_; ++i) e_[i] += o.e_[i];
  return *this;
}

ExponentVector& ExponentVector::operator-=(const ExponentVector& o) {
  for (std::size_t i = 0; i < n_; ++i) e_[i] -= o.e_[i];
  return *this;
}

ExponentVector ExponentVector::operator-() const {
  ExponentVector r = *this;
  for (std::size_t i = 0; i < n_; ++i) r.e_[i] = -r.e_[i];
  return r;
}

std::string ExponentVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (e_[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i);
    if (e_[i] != 1) out += "^" + std::to_string(e_[i]);
  }
  return out.empty() ? "1" : out;
}

std::size_t ExponentVector::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < n_; ++i) {
    h ^= static_cast<std::uint32_t>(e_[i]);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

MultiLaurent::MultiLaurent(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0 || nvars > kMaxVars) throw DomainError("MultiLaurent: bad variable count");
}

MultiLaurent MultiLaurent::constant(std::size_t nvars, const QPoly& c) {
  MultiLaurent f(nvars);
  f.add_term(ExponentVector(nvars), c);
  return f;
}

MultiLaurent MultiLaurent::monomial(const ExponentVector& e, const QPoly& c) {
  MultiLaurent f(e.size());
  f.add_term(e, c);
  return f;
}

void MultiLaurent::check_var(std::size_t i) const {
  if (i >= nvars_) throw DomainError("MultiLaurent: variable index out of range");
}

void MultiLaurent::add_term(const ExponentVector& e, const QPoly& c) {
  if (e.size() != nvars_) throw DomainError("MultiLaurent: exponent vector length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiLaurent& MultiLaurent::operator+=(const MultiLaurent& o) {
  if (o.nvars_ != nvars_) throw DomainError("MultiLaurent: nvars mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiLaurent& MultiLaurent::operator-=(const MultiLaurent& o) {
  if (o.nvars_ != nvars_) throw DomainError("MultiLaurent: nvars mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiLaurent operator*(const MultiLaurent& a, const MultiLaurent& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("ml_mul: nvars mismatch");
  MultiLaurent r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  }
  return r;
}

bool operator==(const MultiLaurent& a, const MultiLaurent& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (const auto& [e, c] : a.terms_) {
    auto it = b.terms_.find(e);
    if (it == b.terms_.end() || !(it->second == c)) return false;
  }
  return true;
}

void MultiLaurent::mul_binomial(int qexp, const ExponentVector& mono) {
  if (mono.size() != nvars_) throw DomainError("mul_binomial: exponent vector length mismatch");
  if (mono.is_zero()) {
    const QPoly f = QPoly::one_minus_q(qexp);
    if (f.is_zero()) {
      terms_.clear();
      return;
    }
    for (auto& [e, c] : terms_) c *= f;
    return;
  }
  std::vector<std::pair<ExponentVector, QPoly>> shifted;
  shifted.reserve(terms_.size());
  for (const auto& [e, c] : terms_) shifted.emplace_back(e + mono, c.shifted(qexp));
  for (auto& [e, c] : shifted) add_term(e, -c);
}

MultiLaurent MultiLaurent::scaled(const QPoly& c) const {
  MultiLaurent r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
  return r;
}

QPoly MultiLaurent::coeff(const ExponentVector& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? QPoly() : it->second;
}

MultiLaurent MultiLaurent::ct_var(std::size_t i) const {
  check_var(i);
  MultiLaurent r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) r.terms_.emplace(e, c);
  }
  return r;
}

QPoly MultiLaurent::ct_all() const {
  MultiLaurent cur = *this;
  for (std::size_t i = 0; i < nvars_; ++i) cur = cur.ct_var(i);
  return cur.coeff(ExponentVector(nvars_));
}

MultiLaurent MultiLaurent::subst(std::size_t i, std::size_t j, int s) const {
  check_var(i);
  check_var(j);
  MultiLaurent r(nvars_);
  for (const auto& [e, c] : terms_) {
    ExponentVector ne = e;
    const int ei = e[i];
    ne[i] = 0;
    ne[j] += ei;
    r.add_term(ne, c.shifted(s * ei));
  }
  return r;
}

bool MultiLaurent::is_homogeneous() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.total_degree() == 0; });
}

std::string MultiLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<ExponentVector, QPoly>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& [e, c] : sorted) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (!e.is_zero()) out += "*" + e.to_string();
  }
  return out;
}

}  // namespace qmorris
