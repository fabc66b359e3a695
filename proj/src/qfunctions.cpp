#include "qseries/qfunctions.hpp"

#include <algorithm>

namespace qs {

namespace {

// scalar * t^shift * prod (1 - sign_i t^{m_i}) with every m_i > 0.
struct Factored {
  mpz_class scalar = 1;
  Exp shift = 0;
  std::vector<std::pair<int, Exp>> units;
};

// Factors (1 - x t^{i*base}) for i in [0, count); count < 0 means unbounded
// with factors of exponent >= horizon omitted.
Factored factor(SignedMonomial x, Exp base, Exp count, Exp horizon) {
  Factored f;
  for (Exp i = 0; count < 0 || i < count; ++i) {
    Exp m = x.e + i * base;
    if (count < 0 && m > 0 && m >= horizon) break;
    if (m == 0) {
      if (x.sign == 1) {
        f.scalar = 0;
        return f;
      }
      f.scalar *= 2;
    } else if (m < 0) {
      // 1 - s t^m = -s t^m (1 - s t^{-m})
      f.scalar *= -x.sign;
      f.shift += m;
      f.units.emplace_back(x.sign, -m);
    } else {
      f.units.emplace_back(x.sign, m);
    }
  }
  return f;
}

QSeries product_of(const Factored& f, Exp prec) {
  if (f.scalar == 0) return QSeries::zero(kExact);
  Exp rel = prec >= kExact ? kExact : prec - f.shift;
  QSeries s = QSeries::one(rel);
  for (auto [sign, m] : f.units) {
    if (m >= rel) continue;
    s.mul_one_minus(sign, m);
  }
  s *= f.scalar;
  s.shift(f.shift);
  return s.truncate(prec);
}

QSeries inverse_of(const Factored& f, Exp prec, const char* what) {
  if (f.scalar == 0) throw DegenerateDivision(std::string(what) + " has a zero factor");
  if (f.scalar != 1 && f.scalar != -1) {
    throw NotAUnit(std::string(what) + " has a non-unit factor");
  }
  if (prec >= kExact) throw PrecisionExceeded("inverse product needs a finite precision");
  Exp rel = prec + f.shift;
  QSeries s = QSeries::one(rel);
  for (auto [sign, m] : f.units) {
    if (m >= rel) continue;
    s.div_one_minus(sign, m, rel);
  }
  if (f.scalar == -1) s.negate();
  s.shift(-f.shift);
  return s.truncate(prec);
}

Exp neg_total(SignedMonomial x, Exp base, Exp n) {
  Exp total = 0;
  for (Exp i = 0; i < n; ++i) {
    Exp m = x.e + i * base;
    if (m >= 0) break;
    total -= m;
  }
  return total;
}

}  // namespace

QSeries poch_finite(SignedMonomial x, Exp base, Exp n, Exp prec) {
  if (n < 0) throw NegativeIndex("finite Pochhammer with n = " + std::to_string(n));
  if (base <= 0) throw Divergent("Pochhammer base must be positive");
  return product_of(factor(x, base, n, kExact), prec);
}

QSeries poch_infinite(SignedMonomial x, Exp base, Exp prec) {
  if (base <= 0) throw Divergent("infinite Pochhammer needs a positive base");
  if (prec >= kExact) throw PrecisionExceeded("infinite Pochhammer needs a finite precision");
  Exp extra = x.e < 0 ? neg_total(x, base, (-x.e) / base + 1) : 0;
  return product_of(factor(x, base, -1, prec + extra), prec);
}

QSeries inv_poch_finite(SignedMonomial x, Exp base, Exp n, Exp prec) {
  if (n < 0) throw NegativeIndex("finite Pochhammer with n = " + std::to_string(n));
  if (base <= 0) throw Divergent("Pochhammer base must be positive");
  return inverse_of(factor(x, base, n, kExact), prec, "finite Pochhammer");
}

QSeries inv_poch_infinite(SignedMonomial x, Exp base, Exp prec) {
  if (base <= 0) throw Divergent("infinite Pochhammer needs a positive base");
  if (prec >= kExact) throw PrecisionExceeded("infinite Pochhammer needs a finite precision");
  return inverse_of(factor(x, base, -1, prec), prec, "infinite Pochhammer");
}

QSeries qbinom(Exp n, Exp m, Exp base, Exp prec) {
  if (m < 0 || n < 0 || m > n) {
    throw OutOfRange("q-binomial needs 0 <= m <= n, got n = " + std::to_string(n) +
                     ", m = " + std::to_string(m));
  }
  if (base <= 0) throw Divergent("q-binomial base must be positive");
  // row[i] = [r choose i], built with [r, i] = [r-1, i-1] + t^{base*i} [r-1, i]
  std::vector<QSeries> row{QSeries::one()};
  for (Exp r = 1; r <= n; ++r) {
    std::vector<QSeries> next(static_cast<std::size_t>(r + 1));
    next[0] = QSeries::one();
    next[static_cast<std::size_t>(r)] = QSeries::one();
    for (Exp i = 1; i < r; ++i) {
      next[static_cast<std::size_t>(i)] =
          row[static_cast<std::size_t>(i - 1)] + row[static_cast<std::size_t>(i)].shifted(base * i);
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(m)].truncate(prec);
}

QSeries triple_product(Exp modulus, Exp a, Exp prec) {
  if (modulus <= 0) throw Divergent("triple product modulus must be positive");
  if (a % modulus == 0) {
    throw DegenerateTheta("A = " + std::to_string(a) + " is a multiple of M = " +
                          std::to_string(modulus));
  }
  if (a < 0 || a > modulus) {
    throw OutOfRange("triple product needs 0 < A < M, got A = " + std::to_string(a) +
                     ", M = " + std::to_string(modulus));
  }
  QSeries s = poch_infinite({1, a}, modulus, prec);
  s *= poch_infinite({1, modulus - a}, modulus, prec);
  s *= poch_infinite({1, modulus}, modulus, prec);
  return s.truncate(prec);
}

QSeries theta_sum(Exp modulus, Exp a, Exp prec) {
  if (modulus <= 0) throw Divergent("theta sum modulus must be positive");
  if (prec >= kExact) throw PrecisionExceeded("theta sum needs a finite precision");
  auto exponent = [&](Exp l) { return modulus * l * (l - 1) / 2 + a * l; };
  std::vector<std::pair<Exp, mpz_class>> terms;
  for (int dir : {1, -1}) {
    int margin = 0;
    for (Exp l = (dir == 1 ? 0 : -1);; l += dir) {
      Exp e = exponent(l);
      // the exponent is increasing in dir*l once past the vertex
      bool past_vertex = exponent(l + dir) >= e;
      if (e >= prec && past_vertex && ++margin > 2) break;
      if (e < prec) terms.emplace_back(e, (l % 2 == 0) ? 1 : -1);
    }
  }
  return QSeries::from_terms(terms, prec);
}

InvPochCache::InvPochCache(Exp base, Exp prec) : base_(base), prec_(prec) {
  table_.push_back(QSeries::one(prec));
}

const QSeries& InvPochCache::get(Exp n) {
  if (n < 0) throw NegativeIndex("Pochhammer cache index " + std::to_string(n));
  while (static_cast<Exp>(table_.size()) <= n) {
    QSeries next = table_.back();
    next.div_one_minus(1, base_ * static_cast<Exp>(table_.size()), prec_);
    table_.push_back(std::move(next));
  }
  return table_[static_cast<std::size_t>(n)];
}

}  // namespace qs
