#include "qseries/sets.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace qs {

namespace {

using I = std::int64_t;

bool x_family(Family f) { return f == Family::X || f == Family::XPrime || f == Family::XTilde; }

bool a_k(const FreqSeq& f, int k) {
  for (I x : f) {
    if (x < 0) return false;
  }
  return max_adjacent_sum(f) <= k;
}

// Whenever f_i + f_{i+1} = k, i f_i + (i+1) f_{i+1} has parity `target`.
bool parity_ok(const FreqSeq& f, int k, I target) {
  for (I i = 0; i < static_cast<I>(f.size()); ++i) {
    I a = entry(f, i), b = entry(f, i + 1);
    if (a + b != k) continue;
    if (((i * a + (i + 1) * b - target) % 2 + 2) % 2 != 0) return false;
  }
  return true;
}

bool y_head(I f0, int j, int r) {
  for (I l = 0; l <= j; ++l) {
    if (f0 == l + std::max<I>(l - (j - r), 0)) return true;
  }
  return false;
}

bool z_head(I f0, I f1, int j, int r, int k) { return f0 <= j - std::max<I>(f0 + f1 - (k - r), 0); }

std::vector<I> x_lower(int k, int r, int j) {
  std::vector<I> lo;
  for (int m = 1; m <= k; ++m) lo.push_back(m - j + std::max(m - (k - r), 0));
  return lo;
}

std::optional<int> x_parity(const SetPredicate& p) {
  if (p.family == Family::XPrime) return ((p.k + p.r - p.j) % 2 + 2) % 2;
  if (p.family == Family::XTilde) return ((p.k + p.r - p.j + 1) % 2 + 2) % 2;
  return std::nullopt;
}

// Partitions with exactly `len` parts, each >= lo with parity `par` unless
// par < 0, and sum <= budget. Parts are built in increasing order and reversed.
void enum_list(I len, I lo, int par, I budget,
               const std::function<void(const std::vector<I>&, I)>& visit) {
  lo = std::max<I>(lo, 0);
  I stepsz = 1;
  if (par >= 0) {
    if (lo % 2 != par) ++lo;
    stepsz = 2;
  }
  std::vector<I> cur;
  std::function<void(I, I)> rec = [&](I from, I sum) {
    if (static_cast<I>(cur.size()) == len) {
      std::vector<I> out(cur.rbegin(), cur.rend());
      visit(out, sum);
      return;
    }
    I left = len - static_cast<I>(cur.size());
    for (I c = from; sum + left * c <= budget; c += stepsz) {
      cur.push_back(c);
      rec(c, sum + c);
      cur.pop_back();
    }
  };
  rec(lo, 0);
}

}  // namespace

bool SetPredicate::on_multipartitions() const { return x_family(family); }

void SetPredicate::validate() const {
  if (k < 1) throw InvalidParameters("k ≥ 1 violated");
  switch (family) {
    case Family::A:
      return;
    case Family::Gordon:
      if (r < 0 || r > k) throw InvalidParameters("0 ≤ r ≤ k violated");
      return;
    case Family::Ysk:
    case Family::YPrimeSk:
    case Family::YTildeSk:
      if (s < 0 || s > k) throw InvalidParameters("0 ≤ s ≤ k violated");
      return;
    default:
      if (r < 0) throw InvalidParameters("r ≥ 0 violated");
      if (j < 0) throw InvalidParameters("j ≥ 0 violated");
      if (r + j > k) throw InvalidParameters("r + j ≤ k violated");
  }
}

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::Gordon: return "gordon";
    case Family::X: return "X";
    case Family::Y: return "Y";
    case Family::Z: return "Z";
    case Family::XPrime: return "Xp";
    case Family::YPrime: return "Yp";
    case Family::ZPrime: return "Zp";
    case Family::XTilde: return "Xt";
    case Family::YTilde: return "Yt";
    case Family::ZTilde: return "Zt";
    case Family::Ysk: return "Ysk";
    case Family::YPrimeSk: return "Ypsk";
    case Family::YTildeSk: return "Ytsk";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::A, Family::Gordon, Family::X, Family::Y, Family::Z, Family::XPrime,
                   Family::YPrime, Family::ZPrime, Family::XTilde, Family::YTilde, Family::ZTilde,
                   Family::Ysk, Family::YPrimeSk, Family::YTildeSk}) {
    if (family_name(f) == s) return f;
  }
  throw InvalidParameters("unknown family '" + s +
                          "' (expected A, gordon, X, Y, Z, Xp, Yp, Zp, Xt, Yt, Zt, Ysk, Ypsk, Ytsk)");
}

std::string SetPredicate::name() const {
  std::string out = family_name(family) + "(k=" + std::to_string(k);
  switch (family) {
    case Family::A:
      break;
    case Family::Gordon:
      out += ",r=" + std::to_string(r);
      break;
    case Family::Ysk:
    case Family::YPrimeSk:
    case Family::YTildeSk:
      out += ",s=" + std::to_string(s);
      break;
    default:
      out += ",r=" + std::to_string(r) + ",j=" + std::to_string(j);
  }
  return out + ")";
}

bool membership(const SetPredicate& p, const FreqSeq& f) {
  if (p.on_multipartitions()) {
    throw KindMismatch(p.name() + " holds multipartitions, got a frequency sequence");
  }
  p.validate();
  if (!a_k(f, p.k)) return false;
  const I f0 = entry(f, 0), f1 = entry(f, 1);
  const int k = p.k, r = p.r, j = p.j;
  switch (p.family) {
    case Family::A:
      return true;
    case Family::Gordon:
      return f0 == 0 && f1 <= k - r;
    case Family::Y:
      return y_head(f0, j, r);
    case Family::Z:
      return z_head(f0, f1, j, r, k);
    case Family::YPrime:
      return y_head(f0, j, r) && parity_ok(f, k, k + r - j);
    case Family::ZPrime:
      return z_head(f0, f1, j, r, k) && parity_ok(f, k, k + r - j);
    case Family::YTilde:
      return y_head(f0, j, r) && parity_ok(f, k, k + r - j + 1);
    case Family::ZTilde:
      return z_head(f0, f1, j, r, k) && parity_ok(f, k, k + r - j + 1);
    case Family::Ysk:
      return f0 == p.s;
    case Family::YPrimeSk:
      return f0 == p.s && parity_ok(f, k, k - p.s);
    case Family::YTildeSk:
      return f0 == p.s && parity_ok(f, k, k - p.s + 1);
    default:
      return false;
  }
}

bool membership(const SetPredicate& p, const MultiPartition& mp) {
  if (!p.on_multipartitions()) {
    throw KindMismatch(p.name() + " holds frequency sequences, got a multipartition");
  }
  p.validate();
  mp.validate();
  if (mp.k() != p.k) return false;
  std::vector<I> lo = x_lower(p.k, p.r, p.j);
  std::optional<int> par = x_parity(p);
  for (int m = 1; m <= p.k; ++m) {
    for (I x : mp.parts[static_cast<std::size_t>(m - 1)]) {
      if (x < lo[static_cast<std::size_t>(m - 1)]) return false;
      if (m == p.k && par && x % 2 != *par) return false;
    }
  }
  return true;
}

std::int64_t total_size(const MultiPartition& mp) { return mp.size() + weight(frame_of(mp)); }

void enum_freq(int k, std::int64_t max_weight, const std::function<void(const FreqSeq&)>& visit) {
  if (k < 1) throw InvalidParameters("k ≥ 1 violated");
  if (max_weight < 0) return;
  FreqSeq cur;
  std::function<void(I, I, I)> rec = [&](I i, I prev, I w) {
    if (i > max_weight || (i >= 1 && w == max_weight)) {
      visit(canonical(cur));
      return;
    }
    for (I x = 0; x <= k - prev && w + i * x <= max_weight; ++x) {
      cur.push_back(x);
      rec(i + 1, x, w + i * x);
      cur.pop_back();
    }
  };
  rec(0, 0, 0);
}

std::vector<FreqSeq> enum_freq(int k, std::int64_t max_weight) {
  std::vector<FreqSeq> out;
  enum_freq(k, max_weight, [&](const FreqSeq& f) { out.push_back(f); });
  return out;
}

void enum_multipartitions(int k, std::int64_t max_size, const std::vector<std::int64_t>& lower,
                          std::optional<int> last_parity,
                          const std::function<void(const MultiPartition&)>& visit) {
  if (k < 1) throw InvalidParameters("k ≥ 1 violated");
  if (static_cast<int>(lower.size()) != k) throw InvalidParameters("need one lower bound per list");
  if (max_size < 0) return;
  std::vector<I> s(static_cast<std::size_t>(k), 0);
  MultiPartition mp;
  mp.parts.assign(static_cast<std::size_t>(k), {});

  // Fill lists m..k given the shape s and the remaining budget.
  std::function<void(int, I)> fill = [&](int m, I budget) {
    if (m > k) {
      visit(mp);
      return;
    }
    std::size_t um = static_cast<std::size_t>(m - 1);
    I len = s[um] - (m < k ? s[um + 1] : 0);
    int par = m == k && last_parity ? *last_parity : -1;
    enum_list(len, lower[um], par, budget, [&](const std::vector<I>& list, I sum) {
      mp.parts[um] = list;
      fill(m + 1, budget - sum);
    });
    mp.parts[um].clear();
  };

  std::function<void(int, I, I)> shape = [&](int m, I cap, I fw) {
    if (m > k) {
      fill(1, max_size - fw);
      return;
    }
    for (I x = 0; x <= cap; ++x) {
      I add = x * x - x;
      if (fw + add > max_size) break;
      s[static_cast<std::size_t>(m - 1)] = x;
      shape(m + 1, x, fw + add);
    }
  };
  I top = 0;
  while ((top + 1) * top <= max_size) ++top;
  shape(1, top, 0);
}

std::vector<FreqSeq> enumerate_freq(const SetPredicate& pred, std::int64_t max_weight) {
  if (pred.on_multipartitions()) throw KindMismatch(pred.name() + " holds multipartitions");
  pred.validate();
  std::vector<FreqSeq> out;
  enum_freq(pred.k, max_weight, [&](const FreqSeq& f) {
    if (membership(pred, f)) out.push_back(f);
  });
  return out;
}

std::vector<MultiPartition> enumerate_multipartitions(const SetPredicate& pred,
                                                      std::int64_t max_size) {
  if (!pred.on_multipartitions()) throw KindMismatch(pred.name() + " holds frequency sequences");
  pred.validate();
  std::vector<MultiPartition> out;
  enum_multipartitions(pred.k, max_size, x_lower(pred.k, pred.r, pred.j), x_parity(pred),
                       [&](const MultiPartition& mp) { out.push_back(mp); });
  return out;
}

FreqSeq phi(int j, int r, int k, const FreqSeq& f) {
  SetPredicate y{Family::Y, k, r, j, 0};
  if (!membership(y, f)) throw NotAMember(format_freq(f) + " is not in " + y.name());
  FreqSeq g = f;
  if (g.empty()) g.push_back(0);
  I f0 = g[0];
  if (j >= r) {
    if (f0 > j - r) g[0] = j - r + (f0 - (j - r)) / 2;
  } else {
    g[0] = (f0 - (r - j)) / 2;
  }
  return canonical(std::move(g));
}

FreqSeq pi(int j, int r, int k, const FreqSeq& g) {
  SetPredicate z{Family::Z, k, r, j, 0};
  if (!membership(z, g)) throw NotAMember(format_freq(g) + " is not in " + z.name());
  FreqSeq f = g;
  if (f.empty()) f.push_back(0);
  I g0 = f[0];
  if (j >= r) {
    if (g0 > j - r) f[0] = j - r + 2 * (g0 - (j - r));
  } else {
    f[0] = r - j + 2 * g0;
  }
  return canonical(std::move(f));
}

QSeries gf_set(const SetPredicate& pred, Exp prec) {
  pred.validate();
  const I w_max = (prec - 1) / 2;
  std::map<Exp, mpz_class> counts;
  if (pred.on_multipartitions()) {
    enum_multipartitions(pred.k, w_max, x_lower(pred.k, pred.r, pred.j), x_parity(pred),
                         [&](const MultiPartition& mp) { counts[2 * total_size(mp)] += 1; });
  } else {
    enum_freq(pred.k, w_max, [&](const FreqSeq& f) {
      if (membership(pred, f)) counts[2 * weight(f)] += 1;
    });
  }
  return QSeries::from_terms({counts.begin(), counts.end()}, prec);
}

QSeries oracle_mod_partitions(int modulus, const std::vector<int>& excluded, Exp prec) {
  if (modulus < 1) throw InvalidParameters("modulus ≥ 1 violated");
  std::vector<bool> banned(static_cast<std::size_t>(modulus), false);
  for (int x : excluded) banned[static_cast<std::size_t>(((x % modulus) + modulus) % modulus)] = true;
  const I n_max = (prec - 1) / 2;
  if (n_max < 0) return QSeries::zero(prec);
  std::vector<mpz_class> c(static_cast<std::size_t>(n_max + 1), 0);
  c[0] = 1;
  for (I part = 1; part <= n_max; ++part) {
    if (banned[static_cast<std::size_t>(part % modulus)]) continue;
    for (I e = part; e <= n_max; ++e) c[static_cast<std::size_t>(e)] += c[static_cast<std::size_t>(e - part)];
  }
  std::vector<std::pair<Exp, mpz_class>> terms;
  for (I e = 0; e <= n_max; ++e) terms.emplace_back(2 * e, c[static_cast<std::size_t>(e)]);
  return QSeries::from_terms(terms, prec);
}

Family interpretation_family(const std::string& row) {
  if (row == "stanton_32") return Family::Z;
  if (row == "stanton_42") return Family::ZPrime;
  if (row == "nonbinom_kursungoz") return Family::ZTilde;
  throw InvalidParameters("no frequency interpretation for '" + row +
                          "' (expected stanton_32, stanton_42 or nonbinom_kursungoz)");
}

Report check_interpretation(const std::string& row, int k, int r, int j, Exp prec) {
  SetPredicate pred{interpretation_family(row), k, r, j, 0};
  pred.validate();
  auto start = std::chrono::steady_clock::now();
  Params p;
  p.k = k;
  p.r = r;
  p.j = j;
  const IdentitySpec& spec = find_identity(row);
  Report rep;
  rep.name = "interpret:" + row;
  rep.params = params_json(spec, p);
  rep.prec = prec;
  QSeries sum = eval_sum(spec.lhs(p), prec);
  QSeries gf = gf_set(pred, prec);
  Comparison cmp = equal_up_to(gf, sum, prec);
  rep.equal = cmp.equal;
  rep.first_mismatch = cmp.first_mismatch;
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

ZTildeReport check_ztilde_relation(int k, int r, int j, Exp prec) {
  if (r < 1) throw InvalidParameters("r ≥ 1 violated");
  if (j < 0) throw InvalidParameters("j ≥ 0 violated");
  if (j + r + 1 > k) throw InvalidParameters("r + 1 + j ≤ k violated");
  const SetPredicate tilde{Family::ZTilde, k, r, j, 0};
  const SetPredicate below{Family::ZPrime, k, r - 1, j, 0};
  const SetPredicate above{Family::ZPrime, k, r + 1, j, 0};
  const I w_max = (prec - 1) / 2;

  std::map<Exp, mpz_class> gt, gb, ga;
  std::vector<FreqSeq> lower, upper;
  ZTildeReport rep;
  rep.inclusions = true;
  enum_freq(k, w_max, [&](const FreqSeq& f) {
    bool t = membership(tilde, f), b = membership(below, f), a = membership(above, f);
    Exp e = 2 * weight(f);
    if (t) gt[e] += 1;
    if (b) gb[e] += 1;
    if (a) ga[e] += 1;
    if ((a && !t) || (t && !b)) rep.inclusions = false;
    if (t && !a) lower.push_back(f);
    if (b && !t) upper.push_back(f);
  });

  auto series = [&](const std::map<Exp, mpz_class>& m) {
    return QSeries::from_terms({m.begin(), m.end()}, prec);
  };
  QSeries lhs = series(gt) * QSeries::from_terms({{0, 1}, {2, 1}});
  QSeries rhs = series(gb) + series(ga).shifted(2);
  rep.gf = equal_up_to(lhs, rhs, prec);

  // f_1 -> f_1 - 1 takes the upper difference onto the lower one.
  rep.shift_bijective = true;
  for (const FreqSeq& f : upper) {
    if (entry(f, 1) < 1) {
      rep.shift_bijective = false;
      break;
    }
    FreqSeq g = f;
    --g[1];
    g = canonical(std::move(g));
    if (!membership(tilde, g) || membership(above, g)) {
      rep.shift_bijective = false;
      break;
    }
  }
  for (const FreqSeq& g : lower) {
    if (weight(g) + 1 > w_max) continue;
    FreqSeq f = g;
    if (f.size() < 2) f.resize(2, 0);
    ++f[1];
    if (!membership(below, f) || membership(tilde, f)) {
      rep.shift_bijective = false;
      break;
    }
  }
  return rep;
}

}  // namespace qs
