#include "qseries/series.hpp"

#include <algorithm>
#include <sstream>

namespace qs {

Exp sat_add(Exp x, Exp y) {
  if (x >= kExact || y >= kExact) return kExact;
  Exp s = x + y;
  return s >= kExact ? kExact : s;
}

QSeries QSeries::zero(Exp prec) {
  QSeries s;
  s.prec_ = std::min(prec, kExact);
  return s;
}

QSeries QSeries::one(Exp prec) { return monomial(1, 0, prec); }

QSeries QSeries::monomial(const mpz_class& c, Exp e, Exp prec) {
  QSeries s = zero(prec);
  if (c != 0 && e < s.prec_) {
    s.val_ = e;
    s.c_.push_back(c);
  }
  return s;
}

QSeries QSeries::from_terms(const std::vector<std::pair<Exp, mpz_class>>& terms,
                            Exp prec) {
  QSeries s = zero(prec);
  Exp lo = kExact, hi = -kExact;
  for (const auto& [e, c] : terms) {
    if (e >= s.prec_ || c == 0) continue;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  if (hi < lo) return s;
  s.val_ = lo;
  s.c_.assign(static_cast<std::size_t>(hi - lo + 1), mpz_class(0));
  for (const auto& [e, c] : terms) {
    if (e < s.prec_ && c != 0) s.c_[static_cast<std::size_t>(e - lo)] += c;
  }
  s.normalize();
  return s;
}

void QSeries::normalize() {
  if (!c_.empty() && top() >= prec_) {
    Exp keep = prec_ - val_;
    c_.resize(keep > 0 ? static_cast<std::size_t>(keep) : 0);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<Exp>(lead);
  }
  if (c_.empty()) val_ = 0;
}

mpz_class QSeries::coeff(Exp e) const {
  if (e >= prec_) {
    throw PrecisionExceeded("coefficient at t^" + std::to_string(e) +
                            " requested, precision is " + std::to_string(prec_));
  }
  if (c_.empty() || e < val_ || e > top()) return 0;
  return c_[static_cast<std::size_t>(e - val_)];
}

std::vector<std::pair<Exp, mpz_class>> QSeries::terms() const {
  std::vector<std::pair<Exp, mpz_class>> out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) out.emplace_back(val_ + static_cast<Exp>(i), c_[i]);
  }
  return out;
}

QSeries& QSeries::truncate(Exp p) {
  if (p < prec_) {
    prec_ = p;
    normalize();
  }
  return *this;
}

QSeries QSeries::truncated(Exp p) const {
  QSeries s = *this;
  return s.truncate(p);
}

QSeries& QSeries::shift(Exp e) {
  if (!c_.empty()) val_ += e;
  prec_ = sat_add(prec_, e);
  return *this;
}

QSeries QSeries::shifted(Exp e) const {
  QSeries s = *this;
  return s.shift(e);
}

QSeries& QSeries::negate() {
  for (auto& x : c_) x = -x;
  return *this;
}

QSeries& QSeries::mul_one_minus(int sign, Exp m) {
  if (m == 0) {
    if (sign == 1) {
      *this = zero(kExact);
    } else {
      for (auto& x : c_) x *= 2;
    }
    return *this;
  }
  if (m < 0) {
    QSeries moved = shifted(m);
    add_scaled(moved, -sign);
    return *this;
  }
  if (c_.empty()) return *this;
  Exp len = static_cast<Exp>(c_.size()) + m;
  if (!is_exact()) len = std::min(len, prec_ - val_);
  c_.resize(static_cast<std::size_t>(len));
  for (Exp i = len - 1; i >= m; --i) {
    auto& dst = c_[static_cast<std::size_t>(i)];
    const auto& src = c_[static_cast<std::size_t>(i - m)];
    if (sign == 1) dst -= src; else dst += src;
  }
  normalize();
  return *this;
}

QSeries& QSeries::div_one_minus(int sign, Exp m, Exp cap) {
  if (m <= 0) throw OutOfRange("division by 1 - t^m needs m > 0");
  Exp p = std::min(prec_, cap);
  if (c_.empty()) {
    prec_ = p;
    return *this;
  }
  if (p >= kExact) {
    throw PrecisionExceeded("dividing an exact series needs a finite cap");
  }
  prec_ = p;
  Exp len = prec_ - val_;
  if (len <= 0) {
    c_.clear();
    val_ = 0;
    return *this;
  }
  c_.resize(static_cast<std::size_t>(len));
  for (Exp i = m; i < len; ++i) {
    auto& dst = c_[static_cast<std::size_t>(i)];
    const auto& src = c_[static_cast<std::size_t>(i - m)];
    if (sign == 1) dst += src; else dst -= src;
  }
  normalize();
  return *this;
}

void QSeries::add_scaled(const QSeries& b, int sign) {
  Exp p = std::min(prec_, b.prec_);
  if (b.c_.empty()) {
    prec_ = p;
    normalize();
    return;
  }
  if (c_.empty()) {
    *this = b;
    if (sign < 0) negate();
    prec_ = p;
    normalize();
    return;
  }
  Exp lo = std::min(val_, b.val_);
  Exp hi = std::max(top(), b.top());
  if (hi >= p) hi = p - 1;
  if (hi < lo) {
    c_.clear();
    val_ = 0;
    prec_ = p;
    return;
  }
  if (lo < val_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(val_ - lo), mpz_class(0));
    val_ = lo;
  }
  if (hi - val_ + 1 > static_cast<Exp>(c_.size())) {
    c_.resize(static_cast<std::size_t>(hi - val_ + 1));
  }
  Exp bend = std::min(b.top(), hi);
  for (Exp e = b.val_; e <= bend; ++e) {
    auto& dst = c_[static_cast<std::size_t>(e - val_)];
    const auto& src = b.c_[static_cast<std::size_t>(e - b.val_)];
    if (sign > 0) dst += src; else dst -= src;
  }
  prec_ = p;
  normalize();
}

QSeries& QSeries::operator+=(const QSeries& b) {
  add_scaled(b, 1);
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& b) {
  add_scaled(b, -1);
  return *this;
}

QSeries& QSeries::operator*=(const QSeries& b) { return *this = *this * b; }

QSeries& QSeries::operator*=(const mpz_class& s) {
  if (s == 0) {
    *this = zero(kExact);
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  Exp p = std::min(sat_add(a.prec_, b.valuation()), sat_add(b.prec_, a.valuation()));
  if (a.c_.empty() || b.c_.empty()) return QSeries::zero(p);
  QSeries out = QSeries::zero(p);
  Exp base = a.val_ + b.val_;
  Exp len = static_cast<Exp>(a.c_.size() + b.c_.size()) - 1;
  if (p < kExact) len = std::min(len, p - base);
  if (len <= 0) return out;
  out.val_ = base;
  out.c_.assign(static_cast<std::size_t>(len), mpz_class(0));
  const Exp na = static_cast<Exp>(a.c_.size());
  const Exp nb = static_cast<Exp>(b.c_.size());
  for (Exp i = 0; i < na && i < len; ++i) {
    const auto& ai = a.c_[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    Exp jmax = std::min(nb, len - i);
    for (Exp j = 0; j < jmax; ++j) {
      mpz_addmul(out.c_[static_cast<std::size_t>(i + j)].get_mpz_t(), ai.get_mpz_t(),
                 b.c_[static_cast<std::size_t>(j)].get_mpz_t());
    }
  }
  out.normalize();
  return out;
}

bool QSeries::operator==(const QSeries& b) const {
  if (prec_ != b.prec_ || c_.size() != b.c_.size()) return false;
  if (!c_.empty() && val_ != b.val_) return false;
  return c_ == b.c_;
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms()) {
    if (first) {
      os << c.get_str();
    } else if (c < 0) {
      os << " - " << mpz_class(-c).get_str();
    } else {
      os << " + " << c.get_str();
    }
    os << "*q^(" << e << "/2)";
    first = false;
  }
  if (!is_exact()) {
    os << (first ? "" : " + ") << "O(q^(" << prec_ << "/2))";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

nlohmann::json QSeries::to_json() const {
  nlohmann::json terms_json = nlohmann::json::array();
  for (const auto& [e, c] : terms()) terms_json.push_back({e, c.get_str()});
  nlohmann::json out;
  if (is_exact()) {
    out["prec"] = nullptr;
  } else {
    out["prec"] = prec_;
  }
  out["terms"] = terms_json;
  return out;
}

QSeries invert(const QSeries& a, Exp cap) {
  if (a.is_zero()) throw EmptySeries("cannot invert the zero series");
  auto ts = a.terms();
  const mpz_class& u0 = ts.front().second;
  if (u0 != 1 && u0 != -1) {
    throw NotAUnit("lowest coefficient " + u0.get_str() + " is not +1 or -1");
  }
  Exp v = a.valuation();
  if (a.is_exact() && ts.size() == 1) {
    return QSeries::monomial(u0, -v, cap);
  }
  Exp p = a.is_exact() ? cap : std::min(cap, a.prec() - 2 * v);
  if (p >= kExact) {
    throw PrecisionExceeded("inverting an exact non-monomial series needs a finite cap");
  }
  Exp n = p + v;
  if (n <= 0) return QSeries::zero(p);
  std::vector<mpz_class> u(static_cast<std::size_t>(std::min<Exp>(n, a.top() - v + 1)));
  for (const auto& [e, c] : ts) {
    if (e - v < static_cast<Exp>(u.size())) u[static_cast<std::size_t>(e - v)] = c;
  }
  std::vector<mpz_class> b(static_cast<std::size_t>(n));
  b[0] = u0;
  mpz_class acc;
  for (Exp m = 1; m < n; ++m) {
    acc = 0;
    Exp imax = std::min<Exp>(m, static_cast<Exp>(u.size()) - 1);
    for (Exp i = 1; i <= imax; ++i) {
      const auto& ui = u[static_cast<std::size_t>(i)];
      if (ui == 0) continue;
      mpz_addmul(acc.get_mpz_t(), ui.get_mpz_t(), b[static_cast<std::size_t>(m - i)].get_mpz_t());
    }
    b[static_cast<std::size_t>(m)] = (u0 == 1) ? mpz_class(-acc) : acc;
  }
  std::vector<std::pair<Exp, mpz_class>> out;
  for (Exp m = 0; m < n; ++m) {
    if (b[static_cast<std::size_t>(m)] != 0) out.emplace_back(m - v, b[static_cast<std::size_t>(m)]);
  }
  return QSeries::from_terms(out, p);
}

QSeries scale_exponents(const QSeries& a, Exp s) {
  if (s <= 0) throw OutOfRange("exponent scale must be positive");
  std::vector<std::pair<Exp, mpz_class>> out;
  for (auto& [e, c] : a.terms()) out.emplace_back(e * s, c);
  Exp p = a.is_exact() ? kExact : std::min(a.prec() * s, kExact);
  return QSeries::from_terms(out, p);
}

Comparison equal_up_to(const QSeries& a, const QSeries& b, Exp p) {
  if (p > a.prec() || p > b.prec()) {
    throw PrecisionExceeded("comparison order " + std::to_string(p) +
                            " exceeds operand precision");
  }
  QSeries d = (a - b).truncated(p);
  Comparison out;
  if (!d.is_zero()) {
    out.equal = false;
    out.first_mismatch = d.valuation();
  }
  return out;
}

}  // namespace qs
