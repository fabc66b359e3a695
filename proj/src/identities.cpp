#include "qseries/identities.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "qseries/multisum.hpp"

namespace qs {

namespace {

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

}  // namespace

QSeries eval_sum(const SumSide& side, Exp prec) {
  const int k = side.k;
  const Exp sc = side.scale;
  MultisumSpec spec(k);
  spec.diff_base = 2 * sc;
  for (int i = 1; i <= k; ++i) {
    std::size_t u = static_cast<std::size_t>(i - 1);
    spec.quad[u] = 2 * sc;
    Exp lin = -static_cast<Exp>(contains(side.subtract_set, i)) +
              static_cast<Exp>(contains(side.add_set, i)) + (i == k ? side.extra_last : 0);
    spec.lin[u] = 2 * sc * lin;
  }
  if (side.binom_subset) {
    for (int i : *side.binom_subset) {
      spec.lin[static_cast<std::size_t>(i - 1)] -= 2 * sc;
      if (i >= 2) spec.branches.emplace_back(i - 1, 2 * sc);
    }
  }
  if (side.head_poch) {
    SignedMonomial x = *side.head_poch;
    spec.quad[0] -= sc;
    spec.lin[0] += sc - x.e;
    spec.alt[0] *= -x.sign;
    spec.head = [x, sc](Exp s1, Exp p) { return poch_finite(x, 2 * sc, s1, p); };
  }

  Exp floor = 0;
  for (int i = 0; i < k; ++i) {
    floor += quadratic_min(spec.quad[static_cast<std::size_t>(i)], spec.lin[static_cast<std::size_t>(i)]);
  }
  const Exp leaf_prec = std::max<Exp>(prec - floor, 1);
  const Exp last = 2 * sc * side.last_base;
  auto memo = std::make_shared<std::map<Exp, QSeries>>();
  auto last_cache = std::make_shared<InvPochCache>(last, leaf_prec);
  bool bgg = side.bgg_tail;
  auto tail = side.tail_poch;
  spec.leaf = [=](const std::vector<Exp>& s, Exp p) {
    Exp sk = s.back();
    auto it = memo->find(sk);
    if (it == memo->end()) {
      QSeries v = last_cache->get(sk);
      if (bgg) v *= inv_poch_finite({-1, 2}, 4, sk, leaf_prec);
      if (tail) v *= inv_poch_finite(tail->first, tail->second, sk, leaf_prec);
      it = memo->emplace(sk, std::move(v)).first;
    }
    return it->second.truncated(p);
  };

  QSeries sum = eval_multisum(spec, prec);
  QSeries out = side.prefactor * sum;
  if (bgg) out *= poch_infinite({-1, 2}, 4, prec);
  return out.truncate(prec);
}

QSeries eval_product(const ProductSide& side, Exp prec, ThetaRoute route) {
  QSeries pre = side.prefactor ? side.prefactor(prec) : QSeries::one(prec);
  if (side.prefactor_only) return pre.truncate(prec);
  QSeries acc = QSeries::zero(prec);
  std::map<std::pair<Exp, Exp>, QSeries> seen;
  for (std::size_t i = 0; i < side.terms.size(); ++i) {
    const ProductTerm& t = side.terms[i];
    if (t.a == 0 || t.a == t.modulus) continue;
    if (t.a < 0 || t.a > t.modulus) {
      throw DegenerateTheta("product term " + std::to_string(i) + " has A = " +
                            std::to_string(t.a) + " outside [0, " +
                            std::to_string(t.modulus) + "]");
    }
    if (t.shift < 0) throw OutOfRange("product term shift must be non-negative");
    auto key = std::make_pair(t.modulus, t.a);
    auto it = seen.find(key);
    if (it == seen.end()) {
      Exp p = prec;
      QSeries v = route == ThetaRoute::Product ? triple_product(t.modulus, t.a, p)
                                               : theta_sum(t.modulus, t.a, p);
      it = seen.emplace(key, std::move(v)).first;
    }
    QSeries piece = it->second.shifted(t.shift);
    piece *= t.weight;
    acc += piece.truncate(prec);
  }
  return (pre * acc).truncate(prec);
}

namespace {

// TP in q-units: (q^M, q^A, q^{M-A}; q^M)_inf, times weight q^shift
ProductTerm tp(mpz_class weight, Exp shift_q, Exp m, Exp a) {
  return {std::move(weight), 2 * shift_q, 2 * m, 2 * a};
}

std::function<QSeries(Exp)> over_q_inf() {
  return [](Exp p) { return inv_poch_infinite({1, 2}, 2, p); };
}

std::function<QSeries(Exp)> kur_prefactor() {
  return [](Exp p) {
    return inv_poch_infinite({1, 2}, 2, p) * inv_poch_finite({-1, 2}, 2, 1, p);
  };
}

std::function<QSeries(Exp)> bgg_prefactor(Exp start) {
  return [start](Exp p) {
    return poch_infinite({-1, start}, 4, p) * inv_poch_infinite({1, 4}, 4, p);
  };
}

std::function<QSeries(Exp)> slater_prefactor() {
  return [](Exp p) { return poch_infinite({-1, 2}, 2, p) * inv_poch_infinite({1, 2}, 2, p); };
}

mpz_class binomial(int n, int m) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
  return out;
}

std::optional<std::string> check_krj(const Params& p) {
  if (p.k < 1) return "k ≥ 1 violated";
  if (p.r < 0) return "r ≥ 0 violated";
  if (p.j < 0) return "j ≥ 0 violated";
  if (p.r + p.j > p.k) return "r + j ≤ k violated";
  return std::nullopt;
}

std::optional<std::string> check_kr(const Params& p) {
  if (p.k < 1) return "k ≥ 1 violated";
  if (p.r < 0 || p.r > p.k) return "0 ≤ r ≤ k violated";
  return std::nullopt;
}

std::optional<std::string> check_kj(const Params& p) {
  if (p.k < 1) return "k ≥ 1 violated";
  if (p.j < 0 || p.j > p.k) return "0 ≤ j ≤ k violated";
  return std::nullopt;
}

std::optional<std::string> check_subset(const Params& p) {
  if (auto v = check_krj(p)) return v;
  if (!p.subset) return std::nullopt;
  const auto& t = *p.subset;
  int top = std::max(1, p.k - p.r);
  if (static_cast<int>(t.size()) != p.j) return "|T| = j violated";
  std::set<int> seen;
  for (int x : t) {
    if (x < 1 || x > top) return "T ⊆ {1..max(1, k - r)} violated";
    if (!seen.insert(x).second) return "T has a repeated element";
  }
  return std::nullopt;
}

std::vector<int> subset_or_default(const Params& p) {
  if (p.subset) return *p.subset;
  return range(1, p.j);
}

SumSide base_side(const Params& p) {
  SumSide s;
  s.k = p.k;
  return s;
}

std::vector<int> r_set(const Params& p) { return range(p.k - p.r + 1, p.k); }
std::vector<int> j_set(const Params& p) { return range(1, p.j); }

std::vector<IdentitySpec> build_catalog() {
  std::vector<IdentitySpec> c;
  const std::vector<std::string> krj{"k", "r", "j"};

  c.push_back({"rogers_ramanujan", {"a"}, false,
               [](const Params& p) -> std::optional<std::string> {
                 if (p.a != 0 && p.a != 1) return "a ∈ {0, 1} violated";
                 return std::nullopt;
               },
               [](const Params& p) {
                 SumSide s;
                 s.k = 1;
                 if (p.a == 0) s.add_set = {1};
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor_only = true;
                 Exp a = p.a;
                 ps.prefactor = [a](Exp pr) {
                   return inv_poch_infinite({1, 2 * (2 - a)}, 10, pr) *
                          inv_poch_infinite({1, 2 * (3 + a)}, 10, pr);
                 };
                 return ps;
               }});

  c.push_back({"andrews_gordon", {"k", "r"}, false, check_kr,
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.add_set = r_set(p);
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = over_q_inf();
                 ps.terms.push_back(tp(1, 0, 2 * p.k + 3, p.k + 1 - p.r));
                 return ps;
               }});

  c.push_back({"bressoud_33", {"k", "j"}, false, check_kj,
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.subtract_set = j_set(p);
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = over_q_inf();
                 for (int s = 0; s <= p.j; ++s) ps.terms.push_back(tp(1, 0, 2 * p.k + 3, p.k + 2 - p.j + 2 * s));
                 return ps;
               }});

  c.push_back({"bressoud_even", {"k", "r"}, false, check_kr,
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.add_set = r_set(p);
                 s.last_base = 2;
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = over_q_inf();
                 ps.terms.push_back(tp(1, 0, 2 * p.k + 2, p.k + 1 - p.r));
                 return ps;
               }});

  c.push_back({"bressoud_35", {"k", "j"}, false, check_kj,
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.subtract_set = j_set(p);
                 s.last_base = 2;
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = over_q_inf();
                 for (int s = 0; s <= p.j; ++s) ps.terms.push_back(tp(1, 0, 2 * p.k + 2, p.k + 1 + p.j - 2 * s));
                 return ps;
               }});

  c.push_back({"kursungoz_0", {"k", "r"}, false, check_kr,
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.add_set = r_set(p);
                 s.extra_last = 1;
                 s.last_base = 2;
                 s.prefactor = QSeries::from_terms({{0, 1}, {2, 1}});
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = over_q_inf();
                 ps.terms.push_back(tp(1, 0, 2 * p.k + 2, p.k + p.r));
                 ps.terms.push_back(tp(1, 1, 2 * p.k + 2, p.k - p.r));
                 return ps;
               }});

  c.push_back({"kursungoz_j", {"k", "j"}, false, check_kj,
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.subtract_set = j_set(p);
                 s.extra_last = 1;
                 s.last_base = 2;
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = over_q_inf();
                 for (int s = 0; s <= p.j; ++s) ps.terms.push_back(tp(1, 0, 2 * p.k + 2, p.k - p.j + 2 * s));
                 return ps;
               }});

  // Stanton's four families and the Kursungoz extensions share one layout:
  // odd modulus 2k+3 with (q)_{s_k}, even modulus 2k+2 with (q^2;q^2)_{s_k}.
  struct Stanton {
    const char* name;
    bool binomial;
    bool even;
  };
  for (Stanton st : {Stanton{"stanton_31", true, false}, Stanton{"stanton_32", false, false},
                     Stanton{"stanton_41", true, true}, Stanton{"stanton_42", false, true}}) {
    bool binom = st.binomial, even = st.even;
    c.push_back({st.name, krj, binom, binom ? check_subset : check_krj,
                 [binom, even](const Params& p) {
                   SumSide s = base_side(p);
                   s.add_set = r_set(p);
                   if (binom) {
                     s.binom_subset = subset_or_default(p);
                   } else {
                     s.subtract_set = j_set(p);
                   }
                   if (even) s.last_base = 2;
                   return s;
                 },
                 [binom, even](const Params& p) {
                   ProductSide ps;
                   ps.prefactor = over_q_inf();
                   Exp m = even ? 2 * p.k + 2 : 2 * p.k + 3;
                   for (int s = 0; s <= p.j; ++s) {
                     ps.terms.push_back(tp(binom ? binomial(p.j, s) : mpz_class(1), 0, m,
                                           p.k + 1 - p.r + p.j - 2 * s));
                   }
                   return ps;
                 }});
  }

  for (bool binom : {true, false}) {
    c.push_back({binom ? "binom_kursungoz" : "nonbinom_kursungoz", krj, binom,
                 binom ? check_subset : check_krj,
                 [binom](const Params& p) {
                   SumSide s = base_side(p);
                   s.add_set = r_set(p);
                   s.extra_last = 1;
                   s.last_base = 2;
                   if (binom) {
                     s.binom_subset = subset_or_default(p);
                   } else {
                     s.subtract_set = j_set(p);
                   }
                   return s;
                 },
                 [binom](const Params& p) {
                   ProductSide ps;
                   ps.prefactor = kur_prefactor();
                   for (int s = 0; s <= p.j; ++s) {
                     mpz_class w = binom ? binomial(p.j, s) : mpz_class(1);
                     ps.terms.push_back(tp(w, 0, 2 * p.k + 2, p.k + 2 - p.r + p.j - 2 * s));
                     ps.terms.push_back(tp(w, 1, 2 * p.k + 2, p.k - p.r + p.j - 2 * s));
                   }
                   return ps;
                 }});
  }

  c.push_back({"gollnitz_gordon", {"variant"}, false,
               [](const Params& p) -> std::optional<std::string> {
                 if (p.a != 1 && p.a != 2) return "variant ∈ {1, 2} violated";
                 return std::nullopt;
               },
               [](const Params& p) {
                 SumSide s;
                 s.k = 1;
                 s.scale = 2;
                 s.head_poch = SignedMonomial{-1, 2};
                 if (p.a == 2) s.add_set = {1};
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor_only = true;
                 std::vector<Exp> parts = p.a == 1 ? std::vector<Exp>{1, 4, 7} : std::vector<Exp>{3, 4, 5};
                 ps.prefactor = [parts](Exp pr) {
                   QSeries out = QSeries::one(pr);
                   for (Exp e : parts) out *= inv_poch_infinite({1, 2 * e}, 16, pr);
                   return out;
                 };
                 return ps;
               }});

  c.push_back({"bressoud_gg", {"k", "j"}, false, check_kj,
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.scale = 2;
                 s.subtract_set = j_set(p);
                 s.bgg_tail = true;
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = bgg_prefactor(2);
                 for (int s = 0; s <= p.j; ++s) {
                   ps.terms.push_back(tp(1, 0, 4 * p.k + 4, 2 * p.k + 1 - 2 * p.j + 2 * s));
                 }
                 return ps;
               }});

  for (bool binom : {true, false}) {
    c.push_back({binom ? "binom_bgg" : "nonbinom_bgg", krj, binom,
                 binom ? check_subset : check_krj,
                 [binom](const Params& p) {
                   SumSide s = base_side(p);
                   s.scale = 2;
                   s.add_set = r_set(p);
                   s.bgg_tail = true;
                   if (binom) {
                     s.binom_subset = subset_or_default(p);
                   } else {
                     s.subtract_set = j_set(p);
                   }
                   return s;
                 },
                 [binom](const Params& p) {
                   ProductSide ps;
                   ps.prefactor = bgg_prefactor(6);
                   for (int s = 0; s <= p.j; ++s) {
                     mpz_class w = binom ? binomial(p.j, s) : mpz_class(1);
                     Exp m = 4 * p.k + 4;
                     ps.terms.push_back(tp(w, 0, m, 2 * p.k + 3 - 2 * p.r + 2 * p.j - 4 * s));
                     ps.terms.push_back(tp(w, 1, m, 2 * p.k + 1 - 2 * p.r + 2 * p.j - 4 * s));
                   }
                   return ps;
                 }});
  }

  c.push_back({"bgg_j0", {"k", "r"}, false, check_kr,
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.scale = 2;
                 s.add_set = r_set(p);
                 s.bgg_tail = true;
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = bgg_prefactor(6);
                 Exp m = 4 * p.k + 4;
                 ps.terms.push_back(tp(1, 0, m, 2 * p.k + 3 - 2 * p.r));
                 ps.terms.push_back(tp(1, 1, m, 2 * p.k + 1 - 2 * p.r));
                 return ps;
               }});

  c.push_back({"new_slater", krj, false, check_krj,
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.head_poch = SignedMonomial{-1, 0};
                 s.subtract_set = j_set(p);
                 s.add_set = r_set(p);
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = slater_prefactor();
                 for (int s = 0; s <= 2 * p.j; ++s) {
                   for (int t = 0; t <= 2 * p.r; ++t) {
                     ps.terms.push_back(tp(t % 2 ? -1 : 1, 0, 2 * p.k + 2, p.k + 1 - p.r - p.j + s + t));
                   }
                 }
                 return ps;
               }});

  c.push_back({"new_slater2", krj, false,
               [](const Params& p) -> std::optional<std::string> {
                 if (auto v = check_krj(p)) return v;
                 if (p.r < 1) return "r ≥ 1 violated";
                 return std::nullopt;
               },
               [](const Params& p) {
                 SumSide s = base_side(p);
                 s.head_poch = SignedMonomial{-1, 0};
                 s.subtract_set = j_set(p);
                 s.add_set = r_set(p);
                 s.tail_poch = std::make_pair(SignedMonomial{-1, 1}, Exp{2});
                 s.prefactor = QSeries::from_terms({{0, 1}, {1, 1}});
                 return s;
               },
               [](const Params& p) {
                 ProductSide ps;
                 ps.prefactor = slater_prefactor();
                 Exp m = 4 * p.k + 2;
                 for (int s = 0; s <= 2 * p.j; ++s) {
                   for (int t = 0; t <= 2 * p.r - 2; ++t) {
                     ps.terms.push_back({t % 2 ? -1 : 1, 0, m, 2 * p.k + 3 - 2 * p.r - 2 * p.j + 2 * s + 2 * t});
                   }
                   for (int t = 0; t <= 2 * p.r; ++t) {
                     ps.terms.push_back({t % 2 ? -1 : 1, 1, m, 2 * p.k + 1 - 2 * p.r - 2 * p.j + 2 * s + 2 * t});
                   }
                 }
                 return ps;
               }});
  return c;
}

}  // namespace

const std::vector<IdentitySpec>& catalog() {
  static const std::vector<IdentitySpec> c = build_catalog();
  return c;
}

const IdentitySpec& find_identity(const std::string& name) {
  for (const auto& spec : catalog()) {
    if (spec.name == name) return spec;
  }
  throw InvalidParameters("unknown identity '" + name + "'");
}

nlohmann::json params_json(const IdentitySpec& spec, const Params& p) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& n : spec.param_names) {
    if (n == "k") out["k"] = p.k;
    if (n == "r") out["r"] = p.r;
    if (n == "j") out["j"] = p.j;
    if (n == "a") out["a"] = p.a;
    if (n == "variant") out["variant"] = p.a;
  }
  if (spec.has_subsets) out["subset"] = subset_or_default(p);
  return out;
}

std::vector<std::vector<int>> binom_subsets(int k, int r, int j) {
  int top = std::max(1, k - r);
  std::vector<std::vector<int>> out;
  if (j < 0 || j > top) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == j) {
      out.push_back(cur);
      return;
    }
    for (int x = next; x <= top; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

std::vector<Params> valid_params(const IdentitySpec& spec, int max_k) {
  std::vector<Params> out;
  const auto& names = spec.param_names;
  auto has = [&](const char* n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  if (has("a") || has("variant")) {
    for (int a = 0; a <= 2; ++a) {
      Params p;
      p.a = a;
      if (!spec.violation(p)) out.push_back(p);
    }
    return out;
  }
  for (int k = 1; k <= max_k; ++k) {
    for (int r = 0; r <= (has("r") ? k : 0); ++r) {
      for (int j = 0; j <= (has("j") ? k : 0); ++j) {
        Params p;
        p.k = k;
        p.r = r;
        p.j = j;
        if (spec.violation(p)) continue;
        if (spec.has_subsets) {
          for (auto& t : binom_subsets(k, r, j)) {
            Params q = p;
            q.subset = t;
            out.push_back(q);
          }
        } else {
          out.push_back(p);
        }
      }
    }
  }
  return out;
}

nlohmann::json Report::to_json() const {
  nlohmann::json out;
  out["name"] = name;
  out["params"] = params;
  out["prec"] = prec;
  out["equal"] = equal;
  out["first_mismatch"] = first_mismatch ? nlohmann::json(*first_mismatch) : nlohmann::json(nullptr);
  out["elapsed_ms"] = elapsed_ms;
  if (!error.empty()) out["error"] = error;
  return out;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << name << " " << params.dump() << " prec=" << prec << " ";
  if (!error.empty()) {
    os << "error: " << error;
  } else if (equal) {
    os << "equal";
  } else {
    os << "mismatch at q^(" << *first_mismatch << "/2)";
  }
  return os.str();
}

Report verify_identity(const std::string& name, const Params& p, Exp prec) {
  const IdentitySpec& spec = find_identity(name);
  if (auto v = spec.violation(p)) throw InvalidParameters(*v);
  auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.name = name;
  rep.params = params_json(spec, p);
  rep.prec = prec;
  QSeries lhs = eval_sum(spec.lhs(p), prec);
  QSeries rhs = eval_product(spec.rhs(p), prec);
  if (!lhs.is_zero() && lhs.valuation() < 0) {
    throw OutOfRange(name + ": sum side has negative exponents");
  }
  Comparison cmp = equal_up_to(lhs, rhs, prec);
  rep.equal = cmp.equal;
  rep.first_mismatch = cmp.first_mismatch;
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

std::vector<Report> verify_subset_variants(const std::string& name, int k, int r, int j, Exp prec) {
  const IdentitySpec& spec = find_identity(name);
  if (!spec.has_subsets) throw InvalidParameters(name + " has no subset variants");
  Params p;
  p.k = k;
  p.r = r;
  p.j = j;
  if (auto v = spec.violation(p)) throw InvalidParameters(*v);
  std::vector<Report> out;
  for (auto& t : binom_subsets(k, r, j)) {
    p.subset = t;
    out.push_back(verify_identity(name, p, prec));
  }
  return out;
}

std::vector<Report> sweep(int max_k, Exp prec, int jobs) {
  if (max_k < 1) throw InvalidParameters("max_k ≥ 1 violated");
  std::vector<std::pair<std::string, Params>> rows;
  for (const auto& spec : catalog()) {
    for (auto& p : valid_params(spec, max_k)) rows.emplace_back(spec.name, p);
  }
  std::vector<Report> out(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      const auto& [name, p] = rows[i];
      try {
        out[i] = verify_identity(name, p, prec);
      } catch (const std::exception& e) {
        Report rep;
        rep.name = name;
        rep.params = params_json(find_identity(name), p);
        rep.prec = prec;
        rep.error = e.what();
        out[i] = rep;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace qs
