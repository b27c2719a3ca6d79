#include "qmorris/qpoly.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "qmorris/error.hpp"

namespace qmorris {

QPoly::QPoly(long c) {
  if (c != 0) coeffs_.emplace_back(c);
}

QPoly::QPoly(const Integer& c) {
  if (c != 0) coeffs_.push_back(c);
}

QPoly QPoly::monomial(const Integer& c, int exponent) {
  QPoly p(c);
  if (!p.is_zero()) p.low_ = exponent;
  return p;
}

QPoly QPoly::one_minus_q(int s) {
  if (s == 0) return QPoly();
  QPoly p;
  const int lo = std::min(0, s);
  const int hi = std::max(0, s);
  p.low_ = lo;
  p.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), Integer(0));
  p.coeffs_[static_cast<std::size_t>(0 - lo)] = 1;
  p.coeffs_[static_cast<std::size_t>(s - lo)] = -1;
  return p;
}

bool QPoly::is_constant() const { return is_zero() || (coeffs_.size() == 1 && low_ == 0); }

bool QPoly::is_one() const { return coeffs_.size() == 1 && low_ == 0 && coeffs_[0] == 1; }

Integer QPoly::coeff(int exponent) const {
  const long idx = static_cast<long>(exponent) - low_;
  if (idx < 0 || idx >= static_cast<long>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(idx)];
}

std::vector<std::pair<int, Integer>> QPoly::terms() const {
  std::vector<std::pair<int, Integer>> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) out.emplace_back(low_ + static_cast<int>(i), coeffs_[i]);
  }
  return out;
}

Integer QPoly::leading_coeff() const { return is_zero() ? Integer(0) : coeffs_.back(); }

Integer QPoly::trailing_coeff() const { return is_zero() ? Integer(0) : coeffs_.front(); }

Integer QPoly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void QPoly::trim() {
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  std::size_t last = coeffs_.size();
  while (coeffs_[last - 1] == 0) --last;
  if (first > 0 || last < coeffs_.size()) {
    coeffs_.erase(coeffs_.begin() + static_cast<long>(last), coeffs_.end());
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(first));
    low_ += static_cast<int>(first);
  }
}

void QPoly::add_scaled(const QPoly& p, int shift, const Integer& c) {
  if (p.is_zero() || c == 0) return;
  if (&p == this) {
    const QPoly copy = p;
    add_scaled(copy, shift, c);
    return;
  }
  const int plow = p.low_ + shift;
  const int phigh = plow + static_cast<int>(p.coeffs_.size()) - 1;
  if (is_zero()) {
    low_ = plow;
    coeffs_.resize(p.coeffs_.size());
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) coeffs_[i] = p.coeffs_[i] * c;
    return;
  }
  const int high = degree();
  const int new_low = std::min(low_, plow);
  const int new_high = std::max(high, phigh);
  if (new_low < low_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - new_low), Integer(0));
    low_ = new_low;
  }
  if (new_high > high) coeffs_.resize(static_cast<std::size_t>(new_high - low_ + 1), Integer(0));
  const std::size_t off = static_cast<std::size_t>(plow - low_);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
    mpz_addmul(coeffs_[off + i].get_mpz_t(), p.coeffs_[i].get_mpz_t(), c.get_mpz_t());
  }
  trim();
}

QPoly& QPoly::operator+=(const QPoly& other) {
  add_scaled(other, 0, Integer(1));
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& other) {
  add_scaled(other, 0, Integer(-1));
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& other) {
  *this = *this * other;
  return *this;
}

QPoly& QPoly::operator*=(const Integer& c) {
  if (c == 0) {
    coeffs_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.low_ = a.low_ + b.low_;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(r.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  r.trim();
  return r;
}

QPoly QPoly::shifted(int shift) const {
  QPoly r = *this;
  if (!r.is_zero()) r.low_ += shift;
  return r;
}

QPoly QPoly::divexact(const Integer& c) const {
  QPoly r = *this;
  for (auto& x : r.coeffs_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

Rational QPoly::eval(const Rational& q0) const {
  if (is_zero()) return 0;
  if (q0 == 0) {
    if (low_ < 0) throw DomainError("QPoly::eval: q0 = 0 with negative exponents");
    return low_ == 0 ? Rational(coeffs_[0]) : Rational(0);
  }
  // Horner over the dense window, then scale by q0^low.
  Rational v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    v *= q0;
    v += *it;
  }
  Rational base = low_ >= 0 ? q0 : Rational(1) / q0;
  int e = low_ >= 0 ? low_ : -low_;
  Rational scale = 1;
  while (e > 0) {
    if (e & 1) scale *= base;
    base *= base;
    e >>= 1;
  }
  return v * scale;
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    const int e = low_ + static_cast<int>(i);
    const bool neg = c < 0;
    const Integer mag = neg ? Integer(-c) : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "q";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

QPoly QPoly::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw DomainError("QPoly::parse: empty input");
  QPoly out;
  std::size_t pos = 0;
  auto read_int = [&](std::string* digits) {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    *digits = s.substr(start, pos - start);
    return pos > start;
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw DomainError("QPoly::parse: expected sign in '" + s + "'");
    }
    std::string digits;
    Integer c = 1;
    const bool has_num = read_int(&digits);
    if (has_num) c = Integer(digits);
    int e = 0;
    if (pos < s.size() && (s[pos] == '*' || s[pos] == 'q')) {
      if (s[pos] == '*') {
        if (!has_num) throw DomainError("QPoly::parse: dangling '*'");
        ++pos;
      }
      if (pos >= s.size() || s[pos] != 'q') throw DomainError("QPoly::parse: expected 'q'");
      ++pos;
      e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        int esign = 1;
        if (pos < s.size() && s[pos] == '-') {
          esign = -1;
          ++pos;
        }
        if (!read_int(&digits)) throw DomainError("QPoly::parse: bad exponent");
        e = esign * std::stoi(digits);
      }
    } else if (!has_num) {
      throw DomainError("QPoly::parse: empty term in '" + s + "'");
    }
    out.add_scaled(QPoly(1).shifted(e), 0, c * sign);
  }
  return out;
}

namespace {

// Pseudo-remainder of a by b (both plain polynomials, low = 0).
QPoly pseudo_rem(QPoly a, const QPoly& b) {
  const auto& bc = b.dense();
  const Integer& lb = bc.back();
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    const Integer la = a.leading_coeff();
    a *= lb;
    a.add_scaled(b, shift, Integer(-la));
  }
  return a;
}

QPoly primitive_part(const QPoly& p) {
  if (p.is_zero()) return p;
  QPoly r = p.divexact(p.content());
  if (r.leading_coeff() < 0) r = -r;
  return r;
}

}  // namespace

bool exact_divide(const QPoly& a, const QPoly& b, QPoly* quotient) {
  if (b.is_zero()) throw DivisionByZero("exact_divide: division by zero polynomial");
  if (a.is_zero()) {
    *quotient = QPoly();
    return true;
  }
  // Work on polynomial parts, restore the q-shift at the end.
  const int shift = a.low_degree() - b.low_degree();
  const auto& bc = b.dense();
  const std::size_t nb = bc.size();
  std::vector<Integer> rem = a.dense();
  if (rem.size() < nb) return false;
  std::vector<Integer> quo(rem.size() - nb + 1);
  const Integer& lb = bc.back();
  Integer t;
  for (std::size_t i = quo.size(); i-- > 0;) {
    Integer& top = rem[i + nb - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (std::size_t j = 0; j < nb; ++j) {
      mpz_submul(rem[i + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
    }
    quo[i] = t;
  }
  for (const auto& r : rem) {
    if (r != 0) return false;
  }
  QPoly q;
  for (std::size_t i = 0; i < quo.size(); ++i) {
    if (quo[i] != 0) q.add_scaled(QPoly(1), static_cast<int>(i) + shift, quo[i]);
  }
  *quotient = std::move(q);
  return true;
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
  QPoly x = primitive_part(a.shifted(-a.low_degree()));
  QPoly y = primitive_part(b.shifted(-b.low_degree()));
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.degree() == 0) return QPoly(1);
    QPoly r = primitive_part(pseudo_rem(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace qmorris
