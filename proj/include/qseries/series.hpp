#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qseries/errors.hpp"

namespace qs {

// Exponents are in units of t = q^(1/2).
using Exp = std::int64_t;

// Precision of a series with no unknown terms.
inline constexpr Exp kExact = Exp{1} << 60;

Exp sat_add(Exp x, Exp y);

struct Comparison {
  bool equal = true;
  std::optional<Exp> first_mismatch;
};

// Truncated Laurent series sum c_e t^e + O(t^prec) with integer coefficients.
// Storage is dense from the lowest nonzero exponent to the highest one.
class QSeries {
 public:
  QSeries() = default;

  static QSeries zero(Exp prec = kExact);
  static QSeries one(Exp prec = kExact);
  static QSeries monomial(const mpz_class& c, Exp e, Exp prec = kExact);
  static QSeries from_terms(const std::vector<std::pair<Exp, mpz_class>>& terms,
                            Exp prec = kExact);

  Exp prec() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  bool is_zero() const { return c_.empty(); }
  // Lowest stored exponent, or prec for the zero series.
  Exp valuation() const { return c_.empty() ? prec_ : val_; }
  // Highest stored exponent; undefined for the zero series.
  Exp top() const { return val_ + static_cast<Exp>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }

  mpz_class coeff(Exp e) const;
  std::vector<std::pair<Exp, mpz_class>> terms() const;

  QSeries& truncate(Exp p);
  QSeries truncated(Exp p) const;
  QSeries& shift(Exp e);
  QSeries shifted(Exp e) const;
  QSeries& negate();

  // In-place multiplication by (1 - sign*t^m).
  QSeries& mul_one_minus(int sign, Exp m);
  // In-place division by (1 - sign*t^m), m > 0. The result keeps at most
  // `cap` as precision; an exact nonzero input needs a finite cap.
  QSeries& div_one_minus(int sign, Exp m, Exp cap = kExact);

  QSeries& operator+=(const QSeries& b);
  QSeries& operator-=(const QSeries& b);
  QSeries& operator*=(const QSeries& b);
  QSeries& operator*=(const mpz_class& s);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator-(QSeries a) { return a.negate(); }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const mpz_class& s) { return a *= s; }

  bool operator==(const QSeries& b) const;

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  Exp val_ = 0;
  Exp prec_ = kExact;
  std::vector<mpz_class> c_;

  void normalize();
  void add_scaled(const QSeries& b, int sign);
};

QSeries invert(const QSeries& a, Exp cap = kExact);
QSeries scale_exponents(const QSeries& a, Exp s);
Comparison equal_up_to(const QSeries& a, const QSeries& b, Exp p);

}  // namespace qs
