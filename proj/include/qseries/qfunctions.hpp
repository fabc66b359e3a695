#pragma once

#include <vector>

#include "qseries/series.hpp"

namespace qs {

// sign * t^e
struct SignedMonomial {
  int sign = 1;
  Exp e = 0;

  bool operator==(const SignedMonomial&) const = default;
  QSeries series() const { return QSeries::monomial(sign, e); }
  SignedMonomial times(int s, Exp de) const { return {sign * s, e + de}; }
};

// prod_{i<n} (1 - x t^{i*base})
QSeries poch_finite(SignedMonomial x, Exp base, Exp n, Exp prec = kExact);
QSeries poch_infinite(SignedMonomial x, Exp base, Exp prec);
// 1/(x; t^base)_n and 1/(x; t^base)_inf; every factor must be a unit.
QSeries inv_poch_finite(SignedMonomial x, Exp base, Exp n, Exp prec);
QSeries inv_poch_infinite(SignedMonomial x, Exp base, Exp prec);

// Gaussian binomial [n choose m] in the variable t^base.
QSeries qbinom(Exp n, Exp m, Exp base, Exp prec = kExact);

// (t^A, t^(M-A), t^M; t^M)_inf
QSeries triple_product(Exp modulus, Exp a, Exp prec);
// sum over all integers l of (-1)^l t^(M l(l-1)/2 + A l)
QSeries theta_sum(Exp modulus, Exp a, Exp prec);

// Cache of 1/(t^base; t^base)_n for growing n at a fixed precision.
class InvPochCache {
 public:
  InvPochCache(Exp base, Exp prec);
  const QSeries& get(Exp n);
  Exp prec() const { return prec_; }

 private:
  Exp base_;
  Exp prec_;
  std::vector<QSeries> table_;
};

}  // namespace qs
