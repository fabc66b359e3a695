#include "qseries/bailey.hpp"

#include <algorithm>
#include <cctype>

#include "qseries/multisum.hpp"

namespace qs {

namespace {

QSeries mono(SignedMonomial m) { return QSeries::monomial(m.sign, m.e); }

SignedMonomial mul(SignedMonomial x, SignedMonomial y) { return {x.sign * y.sign, x.e + y.e}; }
SignedMonomial recip(SignedMonomial x) { return {x.sign, -x.e}; }
SignedMonomial power(SignedMonomial x, Exp n) {
  int s = (x.sign < 0 && (n % 2 != 0)) ? -1 : 1;
  return {s, x.e * n};
}
// sign * q^n, i.e. t^(2n)
SignedMonomial qpow(Exp n, int sign = 1) { return {sign, 2 * n}; }

// 1 - x, exact
QSeries one_minus(SignedMonomial x) { return QSeries::one() - mono(x); }

QSeries inv_one_minus(SignedMonomial x, Exp cap) { return inv_poch_finite(x, 1, 1, cap); }

// rhs / (x; q)_inf, with the inverse taken deep enough to cover a negative
// valuation of rhs
QSeries over_poch_infinite(const QSeries& rhs, SignedMonomial x, Exp prec) {
  Exp cap = prec + std::max<Exp>(0, -rhs.valuation());
  return (rhs * inv_poch_infinite(x, 2, cap)).truncate(prec);
}

// sum_{i<m} x^i, exact
QSeries geometric(SignedMonomial x, Exp m) {
  QSeries s = QSeries::zero();
  for (Exp i = 0; i < m; ++i) s += mono(power(x, i));
  return s;
}

Exp binom2(Exp n) { return n * (n - 1) / 2; }

bool is_one(SignedMonomial x) { return x.sign == 1 && x.e == 0; }

Exp pair_prec(const BaileyPair& p, Exp limit) {
  Exp pr = limit;
  for (const auto& s : p.alpha) pr = std::min(pr, s.prec());
  for (const auto& s : p.beta) pr = std::min(pr, s.prec());
  return pr;
}

BaileyPair finish(BaileyPair p, Exp limit) {
  p.prec = pair_prec(p, limit);
  for (auto& s : p.alpha) s.truncate(p.prec);
  for (auto& s : p.beta) s.truncate(p.prec);
  return p;
}

BaileyPair blank(SignedMonomial a, int n_max) {
  if (n_max < 0) throw NegativeIndex("n_max = " + std::to_string(n_max));
  BaileyPair p;
  p.a = a;
  p.n_max = n_max;
  p.alpha.resize(static_cast<std::size_t>(n_max + 1));
  p.beta.resize(static_cast<std::size_t>(n_max + 1));
  return p;
}

void check_parameter(SignedMonomial a) {
  // (aq; q)_n has the factor 1 - a q^i = 0 for a = q^{-i}
  if (a.sign == 1 && a.e <= -2 && a.e % 2 == 0) {
    throw PoleAtParameter("a = " + monomial_name(a) + " makes (aq; q)_n vanish");
  }
}

const QSeries& beta_ref(const BaileyPair& p, Exp n) {
  if (n > p.n_max) {
    throw NotStabilized("beta_" + std::to_string(n) + " needed but n_max = " +
                        std::to_string(p.n_max));
  }
  return p.beta[static_cast<std::size_t>(n)];
}

// (1 - a) / (1 - a q^{2n}) with the n = 0 value 1
QSeries lattice_ratio(SignedMonomial a, Exp n, Exp cap) {
  if (n == 0) return QSeries::one();
  return one_minus(a) * inv_one_minus(mul(a, qpow(2 * n)), cap);
}

// sum_{l<=n} weight(l) / (q)_{n-l} * beta_l
template <class Weight>
std::vector<QSeries> transform_beta(const BaileyPair& p, Exp cap, Weight weight) {
  InvPochCache inv_q(2, cap);
  std::vector<QSeries> out;
  for (int n = 0; n <= p.n_max; ++n) {
    QSeries acc = QSeries::zero(cap);
    for (int l = 0; l <= n; ++l) {
      const QSeries& b = p.beta[static_cast<std::size_t>(l)];
      if (b.is_zero() && b.prec() >= cap) continue;
      acc += weight(n, l) * inv_q.get(n - l) * b;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

BaileyPair apply_bl_inf(const BaileyPair& p, Exp cap) {
  BaileyPair out = blank(p.a, p.n_max);
  for (int n = 0; n <= p.n_max; ++n) {
    out.alpha[static_cast<std::size_t>(n)] = mono(mul(power(p.a, n), qpow(Exp{n} * n))) * p.alpha_at(n);
  }
  out.beta = transform_beta(p, cap, [&](int, int l) {
    return mono(mul(power(p.a, l), qpow(Exp{l} * l)));
  });
  return out;
}

BaileyPair apply_bl_rho(const BaileyPair& p, SignedMonomial rho, Exp cap) {
  SignedMonomial sigma = mul(mul(p.a, qpow(1)), recip(rho));
  BaileyPair out = blank(p.a, p.n_max);
  auto weight = [&](int l) {
    return poch_finite(rho, 2, l) * mono(mul(power(sigma.times(-1, 0), l), qpow(binom2(l))));
  };
  for (int n = 0; n <= p.n_max; ++n) {
    out.alpha[static_cast<std::size_t>(n)] =
        weight(n) * inv_poch_finite(sigma, 2, n, cap) * p.alpha_at(n);
  }
  std::vector<QSeries> inner = transform_beta(p, cap, [&](int, int l) { return weight(l); });
  for (int n = 0; n <= p.n_max; ++n) {
    out.beta[static_cast<std::size_t>(n)] =
        inner[static_cast<std::size_t>(n)] * inv_poch_finite(sigma, 2, n, cap);
  }
  return out;
}

void require_not_one(SignedMonomial a, const char* step) {
  if (is_one(a)) throw DegenerateDivision(std::string(step) + " divides by 1 - a with a = 1");
}

BaileyPair apply_lattice(const BaileyPair& p, Exp cap) {
  require_not_one(p.a, "LATTICE_INF");
  SignedMonomial a = p.a;
  BaileyPair out = blank(a.times(1, -2), p.n_max);
  for (int n = 0; n <= p.n_max; ++n) {
    QSeries core = lattice_ratio(a, n, cap) * p.alpha_at(n);
    if (n >= 1) {
      core -= lattice_ratio(a, n - 1, cap) * mono(mul(a, qpow(2 * n - 2))) * p.alpha_at(n - 1);
    }
    out.alpha[static_cast<std::size_t>(n)] = mono(mul(power(a, n), qpow(Exp{n} * n - n))) * core;
  }
  out.beta = transform_beta(p, cap, [&](int, int l) {
    return mono(mul(power(a, l), qpow(Exp{l} * l - l)));
  });
  return out;
}

BaileyPair apply_key(const BaileyPair& p, bool second, Exp cap) {
  require_not_one(p.a, second ? "KEY2" : "KEY1");
  SignedMonomial a = p.a;
  BaileyPair out = blank(a.times(1, -2), p.n_max);
  for (int n = 0; n <= p.n_max; ++n) {
    QSeries x = lattice_ratio(a, n, cap) * p.alpha_at(n);
    if (second) x = mono(qpow(n)) * x;
    if (n >= 1) {
      SignedMonomial m = second ? qpow(n - 1) : mul(a, qpow(2 * n - 2));
      x -= lattice_ratio(a, n - 1, cap) * mono(m) * p.alpha_at(n - 1);
    }
    out.alpha[static_cast<std::size_t>(n)] = std::move(x);
    out.beta[static_cast<std::size_t>(n)] =
        second ? mono(qpow(n)) * p.beta[static_cast<std::size_t>(n)] : p.beta[static_cast<std::size_t>(n)];
  }
  return out;
}

// (1 - a q^{2n+1}) / (1 - a q)
QSeries lovejoy_ratio(SignedMonomial a, Exp n, Exp cap) {
  if (n == 0) return QSeries::one();
  return one_minus(mul(a, qpow(2 * n + 1))) * inv_one_minus(mul(a, qpow(1)), cap);
}

BaileyPair apply_lovejoy(const BaileyPair& p, SignedMonomial b, Exp cap) {
  SignedMonomial a = p.a;
  BaileyPair out = blank(mul(a, qpow(1)), p.n_max);
  SignedMonomial minus_b = b.times(-1, 0);
  for (int n = 0; n <= p.n_max; ++n) {
    QSeries acc = QSeries::zero(cap);
    for (int l = 0; l <= n; ++l) {
      QSeries c = poch_finite(b, 2, l) *
                  poch_finite(mul(mul(a, qpow(l + 1)), recip(b)), 2, n - l) *
                  mono(mul(power(minus_b, n - l), qpow(binom2(n) - binom2(l))));
      acc += c * p.alpha_at(l);
    }
    out.alpha[static_cast<std::size_t>(n)] =
        lovejoy_ratio(a, n, cap) * inv_poch_finite(mul(b, qpow(1)), 2, n, cap) * acc;
    QSeries ratio = n == 0 ? QSeries::one() : one_minus(b) * inv_one_minus(mul(b, qpow(n)), cap);
    out.beta[static_cast<std::size_t>(n)] = ratio * p.beta[static_cast<std::size_t>(n)];
  }
  return out;
}

BaileyPair apply_lovejoy_b0(const BaileyPair& p, Exp cap) {
  SignedMonomial a = p.a;
  BaileyPair out = blank(mul(a, qpow(1)), p.n_max);
  for (int n = 0; n <= p.n_max; ++n) {
    QSeries acc = QSeries::zero(cap);
    for (int l = 0; l <= n; ++l) {
      acc += mono(mul(power(a, n - l), qpow(Exp{n} * n - Exp{l} * l))) * p.alpha_at(l);
    }
    out.alpha[static_cast<std::size_t>(n)] = lovejoy_ratio(a, n, cap) * acc;
  }
  out.beta = p.beta;
  return out;
}

BaileyPair apply_star(const BaileyPair& p, Exp cap) {
  SignedMonomial a = p.a;
  BaileyPair out = blank(a, p.n_max);
  QSeries partial = QSeries::zero();
  for (int n = 0; n <= p.n_max; ++n) {
    SignedMonomial lead = mul(power(a, n), qpow(Exp{n} * n - n));
    QSeries x = mono(lead) * (QSeries::one() + mono(qpow(2 * n))) * p.alpha_at(n);
    if (n >= 1 && !is_one(a)) {
      QSeries c = mono(lead) * one_minus(mul(a, qpow(2 * n))) * one_minus(recip(a));
      x += c * partial;
    }
    partial += p.alpha_at(n);
    out.alpha[static_cast<std::size_t>(n)] = std::move(x);
  }
  out.beta = transform_beta(p, cap, [&](int n, int l) {
    return mono(power(a, l)) * (mono(qpow(Exp{l} * l + n)) + mono(qpow(Exp{l} * l - l)));
  });
  return out;
}

}  // namespace

BaileyPair unit_pair(SignedMonomial a, int n_max, Exp prec) {
  check_parameter(a);
  BaileyPair p = blank(a, n_max);
  SignedMonomial aq = mul(a, qpow(1));
  for (int n = 0; n <= n_max; ++n) {
    std::size_t i = static_cast<std::size_t>(n);
    p.beta[i] = n == 0 ? QSeries::one(prec) : QSeries::zero(prec);
    if (n == 0) {
      p.alpha[i] = QSeries::one(prec);
      continue;
    }
    p.alpha[i] = mono(qpow(binom2(n), n % 2 ? -1 : 1)) * one_minus(mul(a, qpow(2 * n))) *
                 poch_finite(aq, 2, n - 1) * inv_poch_finite(qpow(1), 2, n, prec);
  }
  return finish(std::move(p), prec);
}

BaileyPair pair_dprime4(SignedMonomial a, int n_max, Exp prec) {
  check_parameter(a);
  BaileyPair p = blank(a, n_max);
  SignedMonomial a2q2 = mul(power(a, 2), qpow(2));
  for (int n = 0; n <= n_max; ++n) {
    std::size_t i = static_cast<std::size_t>(n);
    QSeries inv_q2 = inv_poch_finite(qpow(2), 4, n, prec);
    p.beta[i] = inv_q2;
    if (n == 0) {
      p.alpha[i] = QSeries::one(prec);
      continue;
    }
    p.alpha[i] = mono(qpow(Exp{n} * n, n % 2 ? -1 : 1)) * one_minus(mul(a, qpow(2 * n))) *
                 (QSeries::one() + mono(a)) * poch_finite(a2q2, 4, n - 1) * inv_q2;
  }
  return finish(std::move(p), prec);
}

BaileyPair pair_dprime1(SignedMonomial a, int n_max, Exp prec) {
  check_parameter(a);
  BaileyPair p = blank(a, n_max);
  SignedMonomial a2 = power(a, 2);
  SignedMonomial a2q2 = mul(a2, qpow(2));
  for (int n = 0; n <= n_max; ++n) {
    std::size_t i = static_cast<std::size_t>(n);
    QSeries inv_q2 = inv_poch_finite(qpow(2), 4, n, prec);
    p.beta[i] = mono(qpow(n)) * inv_q2;
    if (n == 0) {
      p.alpha[i] = QSeries::one(prec);
      continue;
    }
    p.alpha[i] = mono(qpow(Exp{n} * n - n, n % 2 ? -1 : 1)) * one_minus(mul(a2, qpow(4 * n))) *
                 poch_finite(a2q2, 4, n - 1) * inv_q2;
  }
  return finish(std::move(p), prec);
}

BaileyPair seed_pair(SeedKind kind, SignedMonomial a, int n_max, Exp prec) {
  switch (kind) {
    case SeedKind::Unit: return unit_pair(a, n_max, prec);
    case SeedKind::DPrime1: return pair_dprime1(a, n_max, prec);
    case SeedKind::DPrime4: return pair_dprime4(a, n_max, prec);
  }
  throw InvalidParameters("unknown seed kind");
}

std::string tag_name(StepTag tag) {
  switch (tag) {
    case StepTag::BL_INF: return "BL_INF";
    case StepTag::BL_RHO: return "BL_RHO";
    case StepTag::LATTICE_INF: return "LATTICE_INF";
    case StepTag::KEY1: return "KEY1";
    case StepTag::KEY2: return "KEY2";
    case StepTag::LOVEJOY_B0: return "LOVEJOY_B0";
    case StepTag::LOVEJOY: return "LOVEJOY";
    case StepTag::STAR: return "STAR";
    case StepTag::STAR1: return "STAR1";
  }
  return "?";
}

StepTag parse_tag(const std::string& s) {
  for (StepTag t : {StepTag::BL_INF, StepTag::BL_RHO, StepTag::LATTICE_INF, StepTag::KEY1,
                    StepTag::KEY2, StepTag::LOVEJOY_B0, StepTag::LOVEJOY, StepTag::STAR,
                    StepTag::STAR1}) {
    if (tag_name(t) == s) return t;
  }
  throw InvalidParameters("unknown transform tag '" + s + "'");
}

SeedKind parse_seed_kind(const std::string& s) {
  if (s == "unit") return SeedKind::Unit;
  if (s == "dprime1") return SeedKind::DPrime1;
  if (s == "dprime4") return SeedKind::DPrime4;
  throw InvalidParameters("unknown seed kind '" + s + "' (expected unit, dprime1 or dprime4)");
}

std::string TransformStep::name() const {
  std::string s = tag_name(tag);
  if (param) s += "(" + monomial_name(*param) + ")";
  return s;
}

SignedMonomial parse_monomial(const std::string& raw) {
  std::string s;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  auto bad = [&]() { return InvalidParameters("cannot parse monomial '" + raw + "'"); };
  SignedMonomial m{1, 0};
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    if (s[i] == '-') m.sign = -1;
    ++i;
  }
  std::string rest = s.substr(i);
  if (rest == "1") return m;
  if (rest.empty() || rest[0] != 'q') throw bad();
  if (rest == "q") return {m.sign, 2};
  if (rest.size() < 3 || rest[1] != '^') throw bad();
  std::string ex = rest.substr(2);
  if (!ex.empty() && ex.front() == '(' && ex.back() == ')') ex = ex.substr(1, ex.size() - 2);
  try {
    std::size_t slash = ex.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      long long v = std::stoll(ex, &used);
      if (used != ex.size()) throw bad();
      return {m.sign, 2 * v};
    }
    std::string num = ex.substr(0, slash), den = ex.substr(slash + 1);
    long long v = std::stoll(num, &used);
    if (used != num.size() || den != "2") throw bad();
    return {m.sign, v};
  } catch (const std::logic_error&) {
    throw bad();
  }
}

std::string monomial_name(SignedMonomial m) {
  std::string sign = m.sign < 0 ? "-" : "";
  if (m.e == 0) return sign + "1";
  if (m.e == 2) return sign + "q";
  if (m.e % 2 == 0) return sign + "q^" + std::to_string(m.e / 2);
  return sign + "q^" + std::to_string(m.e) + "/2";
}

BaileyPair apply(const TransformStep& step, const BaileyPair& p) {
  Exp cap = p.prec;
  BaileyPair out;
  switch (step.tag) {
    case StepTag::BL_INF: out = apply_bl_inf(p, cap); break;
    case StepTag::BL_RHO:
      if (!step.param) throw InvalidParameters("BL_RHO needs rho");
      out = apply_bl_rho(p, *step.param, cap);
      break;
    case StepTag::LATTICE_INF: out = apply_lattice(p, cap); break;
    case StepTag::KEY1: out = apply_key(p, false, cap); break;
    case StepTag::KEY2: out = apply_key(p, true, cap); break;
    case StepTag::LOVEJOY_B0: out = apply_lovejoy_b0(p, cap); break;
    case StepTag::LOVEJOY:
      if (!step.param) throw InvalidParameters("LOVEJOY needs b");
      out = apply_lovejoy(p, *step.param, cap);
      break;
    case StepTag::STAR: out = apply_star(p, cap); break;
    case StepTag::STAR1:
      if (!is_one(p.a)) {
        throw PreconditionViolated("STAR1 needs a = 1, got a = " + monomial_name(p.a));
      }
      out = apply_star(p, cap);
      break;
  }
  return finish(std::move(out), p.prec);
}

PairCheck verify(const BaileyPair& p, Exp prec) {
  if (prec > p.prec) {
    throw PrecisionExceeded("verify at " + std::to_string(prec) + " exceeds working precision " +
                            std::to_string(p.prec));
  }
  SignedMonomial aq = mul(p.a, qpow(1));
  InvPochCache inv_q(2, prec);
  std::vector<QSeries> inv_aq;
  for (int m = 0; m <= 2 * p.n_max; ++m) inv_aq.push_back(inv_poch_finite(aq, 2, m, prec));
  PairCheck out;
  for (int n = 0; n <= p.n_max; ++n) {
    QSeries rhs = QSeries::zero(prec);
    for (int l = 0; l <= n; ++l) {
      rhs += p.alpha[static_cast<std::size_t>(l)] * inv_q.get(n - l) *
             inv_aq[static_cast<std::size_t>(n + l)];
    }
    Comparison c = equal_up_to(p.beta[static_cast<std::size_t>(n)], rhs, prec);
    if (!c.equal) {
      out.ok = false;
      out.first_bad_n = n;
      out.mismatch = c.first_mismatch;
      return out;
    }
  }
  return out;
}

bool commute_check(const BaileyPair& p, Exp prec) {
  if (!is_one(p.a)) throw PreconditionViolated("commutation check needs a = 1");
  TransformStep bl{StepTag::BL_INF, std::nullopt}, star{StepTag::STAR1, std::nullopt};
  BaileyPair first = apply(star, apply(bl, p));
  BaileyPair second = apply(bl, apply(star, p));
  for (int n = 0; n <= p.n_max; ++n) {
    std::size_t i = static_cast<std::size_t>(n);
    if (!equal_up_to(first.beta[i], second.beta[i], prec).equal) return false;
  }
  return true;
}

QSeries alpha_limit(const BaileyPair& p, Exp prec) {
  for (int n = std::max(0, p.n_max - 1); n <= p.n_max; ++n) {
    if (p.alpha[static_cast<std::size_t>(n)].valuation() < prec) {
      throw NotStabilized("alpha_" + std::to_string(n) + " still contributes below " +
                          std::to_string(prec) + "; raise n_max");
    }
  }
  QSeries acc = QSeries::zero(prec);
  for (const auto& x : p.alpha) acc += x;
  return over_poch_infinite(acc, mul(p.a, qpow(1)), prec);
}

QSeries beta_limit(const BaileyPair& p, Exp prec) {
  if (p.n_max < 1) throw NotStabilized("beta limit needs n_max >= 1");
  const QSeries& last = p.beta[static_cast<std::size_t>(p.n_max)];
  const QSeries& prev = p.beta[static_cast<std::size_t>(p.n_max - 1)];
  if (!equal_up_to(last, prev, prec).equal) {
    throw NotStabilized("beta_n has not settled below " + std::to_string(prec) + " at n_max = " +
                        std::to_string(p.n_max));
  }
  QSeries from_alpha = alpha_limit(p, prec) * inv_poch_infinite(qpow(1), 2, prec);
  Comparison c = equal_up_to(last, from_alpha, prec);
  if (!c.equal) {
    throw NotStabilized("beta limit disagrees with the alpha sum at t^" +
                        std::to_string(*c.first_mismatch));
  }
  return last.truncated(prec);
}

bool ChainResult::all_ok() const {
  return std::all_of(log.begin(), log.end(), [](const ChainLogEntry& e) { return e.check.ok; });
}

ChainResult run_chain(const BaileyPair& seed, const std::vector<TransformStep>& steps, Exp prec) {
  ChainResult r{seed, {}};
  for (const auto& step : steps) {
    r.pair = apply(step, r.pair);
    r.log.push_back({step.name(), r.pair.a, verify(r.pair, prec)});
  }
  return r;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterOutOfRange(what);
}

Exp beta_floor(const BaileyPair& p) {
  Exp lb = 0;
  for (const auto& b : p.beta) {
    if (!b.is_zero()) lb = std::min(lb, b.valuation());
  }
  return lb;
}

MultisumSpec lhs_spec(const BaileyPair& p, int k) {
  MultisumSpec spec(k + 1);
  for (int i = 0; i <= k; ++i) {
    spec.lin[static_cast<std::size_t>(i)] = p.a.e;
    spec.alt[static_cast<std::size_t>(i)] = p.a.sign;
  }
  spec.leaf = [&p](const std::vector<Exp>& s, Exp) { return beta_ref(p, s.back()); };
  spec.leaf_val_lb = beta_floor(p);
  return spec;
}

// sum over l <= n_max of term(l) * alpha_l, with the tail checked to be
// above prec
template <class Term>
QSeries alpha_side(const BaileyPair& p, Exp prec, Term term) {
  QSeries acc = QSeries::zero(prec);
  for (int l = 0; l <= p.n_max; ++l) {
    QSeries x = term(l) * p.alpha[static_cast<std::size_t>(l)];
    if (l + 2 > p.n_max && x.valuation() < prec) {
      throw NotStabilized("alpha-side term " + std::to_string(l) + " still contributes below " +
                          std::to_string(prec) + "; raise n_max");
    }
    acc += x;
  }
  return acc.truncate(prec);
}

}  // namespace

Sides lattice_sides(const BaileyPair& p, int k, int r, Exp prec) {
  require(k >= 1, "lattice sum needs k >= 1");
  require(r >= -1 && r <= k, "lattice sum needs -1 <= r <= k");
  MultisumSpec spec = lhs_spec(p, k);
  for (int i = 0; i < k - r; ++i) spec.lin[static_cast<std::size_t>(i)] -= 2;
  Sides s;
  s.lhs = eval_multisum(spec, prec);
  QSeries rhs = alpha_side(p, prec, [&](int l) {
    SignedMonomial lead = mul(power(p.a, Exp{k + 1} * l), qpow(Exp{k + 1} * l * l - Exp{k - r} * l));
    return mono(lead) * geometric(mul(p.a, qpow(2 * l)), k - r + 1);
  });
  s.rhs = over_poch_infinite(rhs, mul(p.a, qpow(1)), prec);
  return s;
}

Comparison check_lattice(const BaileyPair& p, int k, int r, Exp prec) {
  Sides s = lattice_sides(p, k, r, prec);
  return equal_up_to(s.lhs, s.rhs, prec);
}

Sides double_lattice_sides(const BaileyPair& p, int k, int r, int j, Exp prec) {
  require(k >= 1, "two-lattice sum needs k >= 1");
  require(r >= -1 && j >= 0 && r + j <= k, "two-lattice sum needs r >= -1, j >= 0, r + j <= k");
  MultisumSpec spec = lhs_spec(p, k);
  for (int i = 0; i < k - r; ++i) spec.lin[static_cast<std::size_t>(i)] -= i < j ? 4 : 2;
  Sides s;
  s.lhs = eval_multisum(spec, prec);

  // B(y) = sum_{i<=j} q^{-i} y^i - sum_{i<=j} q^{i-j} y^{k+1-r+i} vanishes at
  // y = 1; C = B / (1 - y) has the prefix sums of B as coefficients.
  std::size_t deg = static_cast<std::size_t>(k + 1 - r + j);
  std::vector<QSeries> b(deg + 1, QSeries::zero());
  for (int i = 0; i <= j; ++i) {
    b[static_cast<std::size_t>(i)] += mono(qpow(-i));
    b[static_cast<std::size_t>(k + 1 - r + i)] -= mono(qpow(i - j));
  }
  std::vector<QSeries> c(deg, QSeries::zero());
  QSeries run = QSeries::zero();
  for (std::size_t d = 0; d < deg; ++d) {
    run += b[d];
    c[d] = run;
  }
  QSeries rhs = alpha_side(p, prec, [&](int l) {
    SignedMonomial x0 = mul(p.a, qpow(2 * l));
    QSeries cx = QSeries::zero();
    for (std::size_t d = 0; d < deg; ++d) cx += c[d] * mono(power(x0, static_cast<Exp>(d)));
    SignedMonomial lead =
        mul(power(p.a, Exp{k + 1} * l), qpow(Exp{k + 1} * l * l + Exp{r - j - k} * l));
    return mono(lead) * cx;
  });
  s.rhs = over_poch_infinite(rhs, mul(p.a, qpow(1)), prec);
  return s;
}

Comparison check_double_lattice(const BaileyPair& p, int k, int r, int j, Exp prec) {
  Sides s = double_lattice_sides(p, k, r, j, prec);
  return equal_up_to(s.lhs, s.rhs, prec);
}

namespace {

void check_boundaries(Boundary b, Boundary c) {
  if (b.is_infinite() && c.is_infinite()) {
    throw UnsupportedBoundary("b and c cannot both be infinite");
  }
  for (const Boundary& x : {b, c}) {
    if (!x.is_infinite() && x.value->e < 0) {
      throw UnsupportedBoundary("finite boundary parameters need a non-negative exponent");
    }
  }
}

// (x)_l / x^l, with the limit (-1)^l q^{C(l,2)} as x -> infinity
QSeries boundary_poch(Boundary x, Exp l) {
  if (x.is_infinite()) return mono(qpow(binom2(l), l % 2 ? -1 : 1));
  SignedMonomial v = *x.value;
  return mono(power(recip(v), l)) * poch_finite(v, 2, l);
}

}  // namespace

Sides boundary_lattice_sides(const BaileyPair& p, int k, int r, int j, Boundary b, Boundary c,
                             Exp prec) {
  require(k >= 1, "boundary two-lattice sum needs k >= 1");
  require(r >= 0 && j >= 0 && r + j <= k, "boundary two-lattice sum needs r, j >= 0, r + j <= k");
  check_boundaries(b, c);
  SignedMonomial a = p.a;
  std::size_t last = static_cast<std::size_t>(k);

  MultisumSpec spec = lhs_spec(p, k);
  spec.quad[0] = 1;
  spec.quad[last] = 1;
  spec.lin[0] += 1;
  spec.lin[last] += 1;
  for (int i = 0; i < k - r; ++i) spec.lin[static_cast<std::size_t>(i)] -= i < j ? 4 : 2;
  if (b.is_infinite()) {
    spec.quad[0] += 1;
    spec.lin[0] -= 1;
  } else {
    SignedMonomial bv = *b.value;
    spec.lin[0] -= bv.e;
    spec.alt[0] *= -bv.sign;
    spec.head = [bv](Exp s1, Exp pr) { return poch_finite(bv, 2, s1, pr); };
  }
  if (c.is_infinite()) {
    spec.quad[last] += 1;
    spec.lin[last] -= 1;
  } else {
    SignedMonomial cv = *c.value;
    spec.lin[last] -= cv.e;
    spec.alt[last] *= -cv.sign;
    SignedMonomial aqc = mul(mul(a, qpow(1)), recip(cv));
    spec.leaf = [&p, cv, aqc](const std::vector<Exp>& s, Exp pr) {
      Exp sk1 = s.back(), sk = s[s.size() - 2];
      return poch_finite(cv, 2, sk1, pr) * inv_poch_finite(aqc, 2, sk, pr) * beta_ref(p, sk1);
    };
  }
  Sides s;
  s.lhs = eval_multisum(spec, prec);

  // The 1/(b - a q^{l-1}) factors are cleared against (a/bq)_inf, leaving
  // polynomial brackets in X = a q^{2l-1} and Y = a q^{2l+1}.
  auto over_b = [&](SignedMonomial m) { return mul(m, recip(*b.value)); };
  auto bracket = [&](SignedMonomial x, SignedMonomial shifted) {
    QSeries g = geometric(x, j + 1);
    if (!b.is_infinite()) g -= mono(over_b(shifted)) * geometric(x, j);
    return g;
  };
  QSeries rhs = alpha_side(p, prec, [&](int l) {
    SignedMonomial x = mul(a, qpow(2 * l - 1)), y = mul(a, qpow(2 * l + 1));
    QSeries e1 = bracket(x, mul(a, qpow(l - 1)));
    QSeries e2 = bracket(y, mul(a, qpow(l)));
    QSeries factor2 = mono(mul(power(a, k + 1 - r), qpow(Exp{2 * k + 1 - 2 * r} * l - j)));
    if (b.is_infinite()) {
      factor2 = factor2 * mono(qpow(l, -1));
    } else {
      e1 = e1 * poch_infinite(over_b(mul(a, qpow(l))), 2, prec);
      factor2 = factor2 * (mono(recip(*b.value)) - mono(qpow(l))) *
                poch_infinite(over_b(mul(a, qpow(l + 1))), 2, prec);
    }
    QSeries t = e1 + factor2 * e2;
    SignedMonomial lead = mul(power(a, Exp{k + 1} * l), qpow(Exp{k} * l * l + Exp{r + 1 - j - k} * l));
    t = mono(lead) * boundary_poch(b, l) * boundary_poch(c, l) * t;
    if (!c.is_infinite()) {
      t = t * inv_poch_finite(mul(mul(a, qpow(1)), recip(*c.value)), 2, l, prec);
    }
    return t * inv_one_minus(mul(a, qpow(2 * l)), prec);
  });
  s.rhs = over_poch_infinite(rhs, mul(a, qpow(1)), prec);
  return s;
}

Comparison check_boundary_lattice(const BaileyPair& p, int k, int r, int j, Boundary b,
                                  Boundary c, Exp prec) {
  Sides s = boundary_lattice_sides(p, k, r, j, b, c, prec);
  return equal_up_to(s.lhs, s.rhs, prec);
}

Sides star_chain_sides(const BaileyPair& p, int k, int r, int j, Exp prec,
                       std::optional<std::vector<int>> subset) {
  require(k >= 0 && r >= -1 && j >= 0 && r + j <= k,
          "star chain needs k >= 0, r >= -1, j >= 0, r + j <= k");
  if (!(p.a == SignedMonomial{1, 2})) {
    throw PreconditionViolated("star chain needs a pair relative to q");
  }
  std::vector<int> factors;
  if (subset) {
    factors = *subset;
  } else {
    for (int i = 1; i <= j; ++i) factors.push_back(i);
  }
  std::sort(factors.begin(), factors.end());
  int top = std::max(1, k - r);
  if (static_cast<int>(factors.size()) != j ||
      std::adjacent_find(factors.begin(), factors.end()) != factors.end() ||
      (!factors.empty() && (factors.front() < 1 || factors.back() > top))) {
    throw ParameterOutOfRange("factor subset must have j distinct elements in 1.." +
                              std::to_string(top));
  }
  MultisumSpec spec(k + 1);
  spec.leaf = [&p](const std::vector<Exp>& s, Exp) { return beta_ref(p, s.back()); };
  spec.leaf_val_lb = beta_floor(p);
  for (int i = k - r; i <= k; ++i) spec.lin[static_cast<std::size_t>(i)] += 2;
  for (int t : factors) {
    spec.lin[static_cast<std::size_t>(t - 1)] -= 2;
    if (t >= 2) spec.branches.emplace_back(t - 1, 2);
  }
  Sides s;
  s.lhs = eval_multisum(spec, prec);
  QSeries rhs = alpha_side(p, prec, [&](int l) {
    QSeries first = QSeries::one(), second = QSeries::one();
    for (int i = 0; i < j; ++i) {
      first *= QSeries::one() + mono(qpow(2 * l));
      second *= QSeries::one() + mono(qpow(2 * l + 2));
    }
    QSeries br = first - second * mono(qpow(Exp{k - r + 1} * (2 * l + 1) - j));
    return mono(qpow(Exp{k + 1} * l * l + Exp{r - j + 1} * l)) * one_minus(qpow(1)) *
           inv_one_minus(qpow(2 * l + 1), prec) * br;
  });
  s.rhs = over_poch_infinite(rhs, qpow(1), prec);
  return s;
}

Comparison check_star_chain(const BaileyPair& p, int k, int r, int j, Exp prec,
                            std::optional<std::vector<int>> subset) {
  Sides s = star_chain_sides(p, k, r, j, prec, std::move(subset));
  return equal_up_to(s.lhs, s.rhs, prec);
}

namespace {

void repeat(std::vector<TransformStep>& out, StepTag tag, int times) {
  for (int i = 0; i < times; ++i) out.push_back({tag, std::nullopt});
}

TransformStep boundary_step(Boundary x) {
  if (x.is_infinite()) return {StepTag::BL_INF, std::nullopt};
  return {StepTag::BL_RHO, x.value};
}

}  // namespace

std::vector<TransformStep> star_chain_steps(int k, int r, int j) {
  require(k >= 0 && r >= -1 && j >= 0 && r + j <= k,
          "star chain needs k >= 0, r >= -1, j >= 0, r + j <= k");
  std::vector<TransformStep> out;
  repeat(out, StepTag::BL_INF, r + 1);
  repeat(out, StepTag::KEY1, 1);
  repeat(out, StepTag::BL_INF, k - r - j);
  repeat(out, StepTag::STAR1, j);
  return out;
}

std::vector<TransformStep> double_lattice_steps(int k, int r, int j) {
  require(k >= 1 && r >= -1 && j >= 0 && r + j <= k,
          "two-lattice chain needs k >= 1, r >= -1, j >= 0, r + j <= k");
  std::vector<TransformStep> out;
  repeat(out, StepTag::BL_INF, r + 1);
  if (j == 0) {
    if (r < k) {
      repeat(out, StepTag::LATTICE_INF, 1);
      repeat(out, StepTag::BL_INF, k - r - 1);
    }
    return out;
  }
  if (r + j == k) {
    repeat(out, StepTag::KEY1, 1);
  } else {
    repeat(out, StepTag::LATTICE_INF, 1);
    repeat(out, StepTag::BL_INF, k - r - j - 1);
  }
  repeat(out, StepTag::LATTICE_INF, 1);
  repeat(out, StepTag::BL_INF, j - 1);
  return out;
}

std::vector<TransformStep> boundary_lattice_steps(int k, int r, int j, Boundary b, Boundary c) {
  require(k >= 1 && r >= 0 && j >= 2 && r + j <= k - 1,
          "boundary chain is built for j >= 2, r >= 0, r + j <= k - 1");
  check_boundaries(b, c);
  std::vector<TransformStep> out{boundary_step(c)};
  repeat(out, StepTag::BL_INF, r);
  repeat(out, StepTag::LATTICE_INF, 1);
  repeat(out, StepTag::BL_INF, k - r - j - 1);
  repeat(out, StepTag::LATTICE_INF, 1);
  repeat(out, StepTag::BL_INF, j - 2);
  out.push_back(boundary_step(b));
  return out;
}

QSeries star_chain_alpha(const BaileyPair& seed, int k, int r, int j, int n) {
  Exp cap = seed.prec;
  QSeries lift = QSeries::one();
  for (int i = 0; i < j; ++i) lift *= QSeries::one() + mono(qpow(2 * n));
  // (1 - q) / (1 - q^{2n+1}) and (1 - q) / (1 - q^{2n-1})
  QSeries first = lattice_ratio(qpow(1), n, cap) * seed.alpha_at(n);
  QSeries second = QSeries::zero();
  if (n >= 1) {
    second = lattice_ratio(qpow(1), n - 1, cap) * mono(qpow(-2 * Exp{r} * n - 1)) * seed.alpha_at(n - 1);
  }
  QSeries out = lift * mono(qpow(Exp{k + 1} * n * n + Exp{r + 1 - j} * n)) * (first - second);
  return out.truncate(cap);
}

namespace {

ChainReplication replicate(const BaileyPair& seed, const std::vector<TransformStep>& steps,
                           const QSeries& lhs, const QSeries& scale, Exp prec) {
  ChainReplication out{run_chain(seed, steps, prec), {}};
  QSeries lim = alpha_limit(out.chain.pair, prec) * scale;
  out.limit = equal_up_to(lhs, lim, prec);
  return out;
}

}  // namespace

ChainReplication replicate_star_chain(const BaileyPair& seed, int k, int r, int j, Exp prec) {
  Sides s = star_chain_sides(seed, k, r, j, prec);
  return replicate(seed, star_chain_steps(k, r, j), s.lhs, QSeries::one(), prec);
}

ChainReplication replicate_double_lattice(const BaileyPair& seed, int k, int r, int j, Exp prec) {
  QSeries lhs = double_lattice_sides(seed, k, r, j, prec).lhs;
  return replicate(seed, double_lattice_steps(k, r, j), lhs, QSeries::one(), prec);
}

ChainReplication replicate_boundary_lattice(const BaileyPair& seed, int k, int r, int j,
                                            Boundary b, Boundary c, Exp prec) {
  std::vector<TransformStep> steps = boundary_lattice_steps(k, r, j, b, c);
  QSeries lhs = boundary_lattice_sides(seed, k, r, j, b, c, prec).lhs;
  // the last step divides by (a/bq)_n, which becomes (a/bq)_inf in the limit
  QSeries scale = QSeries::one();
  if (!b.is_infinite()) {
    scale = poch_infinite(mul(mul(seed.a, qpow(-1)), recip(*b.value)), 2, prec);
  }
  return replicate(seed, steps, lhs, scale, prec);
}

bool star_split_check(const BaileyPair& p, Exp prec) {
  TransformStep bl{StepTag::BL_INF, std::nullopt}, key1{StepTag::KEY1, std::nullopt},
      key2{StepTag::KEY2, std::nullopt}, l1{StepTag::LOVEJOY_B0, std::nullopt},
      star{StepTag::STAR, std::nullopt};
  BaileyPair first = apply(l1, apply(bl, apply(key1, p)));
  BaileyPair second = apply(l1, apply(key2, apply(bl, p)));
  BaileyPair whole = apply(star, p);
  for (int n = 0; n <= p.n_max; ++n) {
    std::size_t i = static_cast<std::size_t>(n);
    if (!equal_up_to(whole.alpha[i], first.alpha[i] + second.alpha[i], prec).equal) return false;
    if (!equal_up_to(whole.beta[i], first.beta[i] + second.beta[i], prec).equal) return false;
  }
  return true;
}

Recipe parse_recipe(const nlohmann::json& j) {
  try {
    Recipe r;
    const auto& seed = j.at("seed");
    r.kind = parse_seed_kind(seed.at("kind").get<std::string>());
    r.a = parse_monomial(seed.value("a", std::string("q")));
    r.n_max = j.value("n_max", 10);
    r.prec = j.at("prec").get<Exp>();
    if (r.prec <= 0) throw InvalidParameters("recipe prec must be positive");
    if (r.n_max < 1) throw InvalidParameters("recipe n_max must be positive");
    for (const auto& s : j.at("steps")) {
      TransformStep step{parse_tag(s.at("tag").get<std::string>()), std::nullopt};
      for (const char* key : {"rho", "b"}) {
        if (s.contains(key)) step.param = parse_monomial(s.at(key).get<std::string>());
      }
      r.steps.push_back(step);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameters(std::string("malformed recipe: ") + e.what());
  }
}

nlohmann::json chain_log_json(const ChainResult& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& e : r.log) {
    nlohmann::json row{{"step", e.step}, {"a", monomial_name(e.a)}, {"ok", e.check.ok}};
    if (e.check.first_bad_n) row["first_bad_n"] = *e.check.first_bad_n;
    steps.push_back(row);
  }
  return {{"steps", steps}, {"ok", r.all_ok()}};
}

}  // namespace qs
