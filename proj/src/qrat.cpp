#include "qmorris/qrat.hpp"

#include <mutex>
#include <utility>
#include <vector>

#include "qmorris/error.hpp"

namespace qmorris {

namespace {

std::mutex g_basis_mutex;
std::vector<QPoly> g_basis;  // g_basis[d] for d >= 1; index 0 unused

QPoly compute_basis(int d) {
  QPoly p = QPoly::one_minus_q(d);
  for (int e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    QPoly quo;
    if (!exact_divide(p, cyclotomic_basis(e), &quo)) {
      throw Error("cyclotomic_basis: inexact division (internal)");
    }
    p = std::move(quo);
  }
  return p;
}

// Common factor of N and D (both with lowest exponent 0). Uses the
// cyclotomic factorization of D when it exists, which covers every
// Pochhammer-type denominator; otherwise falls back to the primitive PRS.
QPoly common_factor(const QPoly& n, const QPoly& d) {
  if (n.degree() == 0 || d.degree() == 0) return QPoly(1);
  QPoly rem = d;
  std::vector<std::pair<int, int>> mult;
  for (int j = 1; rem.degree() > 0 && j <= d.degree(); ++j) {
    const QPoly& b = cyclotomic_basis(j);
    int count = 0;
    QPoly quo;
    while (b.degree() <= rem.degree() && exact_divide(rem, b, &quo)) {
      rem = std::move(quo);
      ++count;
    }
    if (count > 0) mult.emplace_back(j, count);
  }
  if (rem.degree() != 0) return poly_gcd(n, d);
  QPoly g(1);
  QPoly work = n;
  for (const auto& [j, count] : mult) {
    const QPoly& b = cyclotomic_basis(j);
    QPoly quo;
    for (int i = 0; i < count && b.degree() <= work.degree(); ++i) {
      if (!exact_divide(work, b, &quo)) break;
      work = std::move(quo);
      g *= b;
    }
  }
  return g;
}

}  // namespace

const QPoly& cyclotomic_basis(int d) {
  if (d < 1) throw DomainError("cyclotomic_basis: index must be positive");
  {
    std::lock_guard<std::mutex> lock(g_basis_mutex);
    if (static_cast<std::size_t>(d) < g_basis.size() && !g_basis[static_cast<std::size_t>(d)].is_zero()) {
      return g_basis[static_cast<std::size_t>(d)];
    }
  }
  QPoly p = compute_basis(d);
  std::lock_guard<std::mutex> lock(g_basis_mutex);
  if (g_basis.size() <= static_cast<std::size_t>(d)) {
    // Reserve generously so references handed out stay valid.
    if (g_basis.capacity() < 4096) g_basis.reserve(4096);
    if (static_cast<std::size_t>(d) >= g_basis.capacity()) {
      throw DomainError("cyclotomic_basis: index too large");
    }
    g_basis.resize(static_cast<std::size_t>(d) + 1);
  }
  auto& slot = g_basis[static_cast<std::size_t>(d)];
  if (slot.is_zero()) slot = std::move(p);
  return slot;
}

QRat::QRat(const QPoly& p) : num_(p), den_(1) {}

QRat QRat::normalize(QPoly num, QPoly den) {
  if (den.is_zero()) throw DivisionByZero("qrat_normalize: zero denominator");
  if (num.is_zero()) return QRat();
  const int shift = num.low_degree() - den.low_degree();
  num = num.shifted(-num.low_degree());
  den = den.shifted(-den.low_degree());
  const QPoly g = common_factor(num, den);
  if (!g.is_one()) {
    QPoly quo;
    if (!exact_divide(num, g, &quo)) throw Error("qrat_normalize: gcd does not divide numerator");
    num = std::move(quo);
    if (!exact_divide(den, g, &quo)) throw Error("qrat_normalize: gcd does not divide denominator");
    den = std::move(quo);
  }
  Integer c;
  const Integer cn = num.content();
  const Integer cd = den.content();
  mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (c != 1) {
    num = num.divexact(c);
    den = den.divexact(c);
  }
  if (den.trailing_coeff() < 0) {
    num = -num;
    den = -den;
  }
  return QRat(num.shifted(shift), std::move(den), 0);
}

QRat& QRat::operator+=(const QRat& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    *this = normalize(num_ + o.num_, den_);
  } else {
    *this = normalize(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  return *this;
}

QRat& QRat::operator-=(const QRat& o) { return *this += -o; }

QRat& QRat::operator*=(const QRat& o) {
  if (is_zero() || o.is_zero()) return *this = QRat();
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  *this = normalize(num_ * o.num_, den_ * o.den_);
  return *this;
}

QRat& QRat::operator/=(const QRat& o) { return *this *= o.inverse(); }

QRat QRat::operator-() const { return QRat(-num_, den_, 0); }

QRat QRat::inverse() const {
  if (is_zero()) throw DivisionByZero("QRat::inverse of zero");
  return normalize(den_, num_);
}

Rational QRat::eval(const Rational& q0) const {
  const Rational d = den_.eval(q0);
  if (d == 0) throw DivisionByZero("QRat::eval: denominator vanishes at q0");
  return num_.eval(q0) / d;
}

std::string QRat::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

QRat QRat::parse(std::string_view text) {
  const auto split = text.find(")/(");
  if (split == std::string_view::npos) return QRat(QPoly::parse(text));
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || open > split || close < split + 2) {
    throw DomainError("QRat::parse: malformed ratio");
  }
  return normalize(QPoly::parse(text.substr(open + 1, split - open - 1)),
                   QPoly::parse(text.substr(split + 3, close - split - 3)));
}

bool equal_by_cross_multiplication(const QPoly& n1, const QPoly& d1, const QPoly& n2, const QPoly& d2) {
  return n1 * d2 == n2 * d1;
}

CyclotomicProduct& CyclotomicProduct::mul_one_minus_q(int j, int power) {
  if (power == 0) return *this;
  if (j == 0) {
    if (power < 0) throw DivisionByZero("CyclotomicProduct: division by (1 - q^0)");
    zero_ = true;
    return *this;
  }
  if (j < 0) {
    // 1 - q^j = -q^j (1 - q^-j)
    if (power % 2 != 0) sign_ = -sign_;
    shift_ += j * power;
    j = -j;
  }
  for (int d = 1; d * d <= j; ++d) {
    if (j % d != 0) continue;
    for (int e : {d, j / d}) {
      const int v = (exps_[e] += power);
      if (v == 0) exps_.erase(e);
      if (d * d == j) break;
    }
  }
  return *this;
}

CyclotomicProduct& CyclotomicProduct::mul_q_factorial(int m, int power) {
  if (m < 0) throw DomainError("(q)_m undefined for m < 0");
  for (int i = 1; i <= m; ++i) mul_one_minus_q(i, power);
  return *this;
}

CyclotomicProduct& CyclotomicProduct::mul_monomial(int sign, int qshift) {
  if (sign == 0) zero_ = true;
  if (sign < 0) sign_ = -sign_;
  shift_ += qshift;
  return *this;
}

CyclotomicProduct& CyclotomicProduct::operator*=(const CyclotomicProduct& o) {
  zero_ = zero_ || o.zero_;
  sign_ *= o.sign_;
  shift_ += o.shift_;
  for (const auto& [d, e] : o.exps_) {
    const int v = (exps_[d] += e);
    if (v == 0) exps_.erase(d);
  }
  return *this;
}

QRat CyclotomicProduct::to_qrat() const {
  if (zero_) return QRat();
  QPoly num(sign_);
  QPoly den(1);
  for (const auto& [d, e] : exps_) {
    const QPoly& b = cyclotomic_basis(d);
    for (int i = 0; i < (e > 0 ? e : -e); ++i) {
      if (e > 0) {
        num *= b;
      } else {
        den *= b;
      }
    }
  }
  return QRat(num.shifted(shift_), std::move(den), 0);
}

}  // namespace qmorris
