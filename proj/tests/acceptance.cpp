// One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "qseries/bailey.hpp"
#include "qseries/identities.hpp"
#include "qseries/motion.hpp"
#include "qseries/qfunctions.hpp"
#include "qseries/sets.hpp"

using namespace qs;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects failures with a short description of the first few.
class Tally {
 public:
  void check(bool cond, const std::string& what) {
    ++checked_;
    if (cond) return;
    ++failed_;
    if (failed_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  std::int64_t checked() const { return checked_; }
  Outcome outcome(const std::string& summary) const {
    if (failed_ == 0) return {true, summary + ", " + std::to_string(checked_) + " checks"};
    return {false, std::to_string(failed_) + "/" + std::to_string(checked_) + " failed: " + first_};
  }

 private:
  std::int64_t checked_ = 0;
  std::int64_t failed_ = 0;
  std::string first_;
};

std::string krj(int k, int r, int j) {
  return "(k=" + std::to_string(k) + ",r=" + std::to_string(r) + ",j=" + std::to_string(j) + ")";
}

Params params(int k, int r, int j, int a = 0) {
  Params p;
  p.k = k;
  p.r = r;
  p.j = j;
  p.a = a;
  return p;
}

QSeries lhs(const std::string& name, const Params& p, Exp prec) {
  return eval_sum(find_identity(name).lhs(p), prec);
}

QSeries rhs(const std::string& name, const Params& p, Exp prec) {
  return eval_product(find_identity(name).rhs(p), prec);
}

long gap_partitions(int n, int min_part) {
  if (n == 0) return 1;
  long total = 0;
  for (int p = min_part; p <= n; ++p) total += gap_partitions(n - p, p + 2);
  return total;
}

// 1. every catalog row at k <= 4 to q^60
Outcome catalog_sweep() {
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  Tally t;
  for (const Report& rep : sweep(4, 120, jobs)) {
    t.check(rep.equal && rep.error.empty(), rep.name + rep.params.dump());
  }
  return t.outcome("q-order 60, k <= 4");
}

// 2. Rogers-Ramanujan coefficient of q^10
Outcome rr_spot() {
  Params p;
  p.a = 1;
  mpz_class want = gap_partitions(10, 1);
  mpz_class l = lhs("rogers_ramanujan", p, 22).coeff(20);
  mpz_class r = rhs("rogers_ramanujan", p, 22).coeff(20);
  Outcome o{l == want && r == want, ""};
  o.detail = "sum " + l.get_str() + ", product " + r.get_str() + ", gap count " + want.get_str();
  return o;
}

// 3. theta sum against the triple product
Outcome triple_product_check() {
  Tally t;
  for (Exp m = 2; m <= 12; ++m) {
    for (Exp a = 1; a < m; ++a) {
      bool eq = equal_up_to(theta_sum(2 * m, 2 * a, 200), triple_product(2 * m, 2 * a, 200), 200).equal;
      t.check(eq, "M=" + std::to_string(m) + ",A=" + std::to_string(a));
    }
  }
  return t.outcome("M <= 12 to q^100");
}

// 4. Bailey engine
Outcome bailey_engine() {
  const Exp P = 100, W = 160;
  const int N = 10;
  const SignedMonomial one{1, 0}, q{1, 2}, q2{1, 4};
  const SeedKind kinds[] = {SeedKind::Unit, SeedKind::DPrime1, SeedKind::DPrime4};
  Tally t;

  std::vector<BaileyPair> seeds;
  for (SeedKind kind : kinds) seeds.push_back(seed_pair(kind, q, N, W));
  seeds.push_back(unit_pair(one, N, W));

  std::vector<TransformStep> singles;
  for (StepTag tag : {StepTag::BL_INF, StepTag::LATTICE_INF, StepTag::KEY1, StepTag::KEY2, StepTag::LOVEJOY_B0,
                      StepTag::STAR, StepTag::STAR1}) {
    singles.push_back({tag, std::nullopt});
  }
  for (SignedMonomial x : {SignedMonomial{-1, 0}, SignedMonomial{-1, 1}, SignedMonomial{-1, 2}}) {
    singles.push_back({StepTag::BL_RHO, x});
    singles.push_back({StepTag::LOVEJOY, x});
  }
  int undefined = 0;
  for (const BaileyPair& s : seeds) {
    t.check(verify(s, P).ok, "seed a=" + monomial_name(s.a));
    for (const TransformStep& st : singles) {
      BaileyPair out;
      try {
        out = apply(st, s);
      } catch (const DegenerateDivision&) {
        ++undefined;
        continue;
      } catch (const PreconditionViolated&) {
        ++undefined;
        continue;
      } catch (const NotAUnit&) {
        ++undefined;
        continue;
      }
      t.check(verify(out, P).ok, st.name() + " at a=" + monomial_name(s.a));
    }
  }

  // full chains: star chain from a = q, two-lattice and boundary chains from a = q^2
  for (SeedKind kind : kinds) {
    BaileyPair sq = seed_pair(kind, q, N, W);
    BaileyPair sq2 = seed_pair(kind, q2, N, W);
    for (int k = 1; k <= 3; ++k) {
      for (int r = -1; r <= k; ++r) {
        for (int j = 0; r + j <= k; ++j) {
          t.check(replicate_star_chain(sq, k, r, j, P).ok(), "star chain " + krj(k, r, j));
          t.check(replicate_double_lattice(sq2, k, r, j, P).ok(), "two-lattice chain " + krj(k, r, j));
        }
      }
    }
    for (int k = 3; k <= 4; ++k) {
      for (int r = 0; r <= k; ++r) {
        for (int j = 2; r + j <= k - 1; ++j) {
          bool ok = replicate_boundary_lattice(sq2, k, r, j, Boundary::infinity(), Boundary::finite({-1, 2}), P).ok() &&
                    replicate_boundary_lattice(sq2, k, r, j, Boundary::finite({-1, 0}), Boundary::infinity(), P).ok();
          t.check(ok, "boundary chain " + krj(k, r, j));
        }
      }
    }
  }

  // multisum limits for k <= 3
  const std::pair<Boundary, Boundary> bounds[] = {
      {Boundary::infinity(), Boundary::finite({-1, 2})},
      {Boundary::finite({-1, 0}), Boundary::infinity()},
      {Boundary::infinity(), Boundary::finite({-1, 3})},
      {Boundary::infinity(), Boundary::finite({-1, 1})},
      {Boundary::finite({-1, 0}), Boundary::finite({-1, 2})},
  };
  std::vector<BaileyPair> at_one, at_q;
  for (SeedKind kind : kinds) {
    at_one.push_back(seed_pair(kind, one, N, W));
    at_q.push_back(seed_pair(kind, q, N, W));
  }
  for (int k = 1; k <= 3; ++k) {
    for (int r = -1; r <= k; ++r) {
      for (const BaileyPair& s : at_one) t.check(check_lattice(s, k, r, P).equal, "lattice a=1 " + krj(k, r, 0));
      for (const BaileyPair& s : at_q) t.check(check_lattice(s, k, r, P).equal, "lattice a=q " + krj(k, r, 0));
      for (int j = 0; r + j <= k; ++j) {
        for (const BaileyPair& s : at_one) {
          t.check(check_double_lattice(s, k, r, j, P).equal, "two-lattice a=1 " + krj(k, r, j));
        }
        for (const BaileyPair& s : at_q) {
          t.check(check_double_lattice(s, k, r, j, P).equal, "two-lattice a=q " + krj(k, r, j));
          t.check(check_star_chain(s, k, r, j, P).equal, "star a=q " + krj(k, r, j));
          if (r < 0) continue;
          for (const auto& [b, c] : bounds) {
            t.check(check_boundary_lattice(s, k, r, j, b, c, P).equal, "boundary a=q " + krj(k, r, j));
          }
        }
      }
    }
  }
  return t.outcome("n_max 10 to q^50, " + std::to_string(undefined) + " single steps outside their domain");
}

// 5. BL_INF and STAR1 commute on beta
Outcome commutation() {
  Tally t;
  for (SeedKind kind : {SeedKind::Unit, SeedKind::DPrime1, SeedKind::DPrime4}) {
    t.check(commute_check(seed_pair(kind, {1, 0}, 8, 140), 80), "seed " + std::to_string(static_cast<int>(kind)));
  }
  return t.outcome("n_max 8 to q^40");
}

// 6. insertion map and its inverse
Outcome bijection() {
  Tally t;
  auto motions_agree = [&](const MotionTrace& tr) {
    for (std::size_t i = 1; i < tr.steps.size(); ++i) {
      const FreqSeq& prev = tr.steps[i - 1].state;
      const auto& prm = tr.steps[i].params;
      std::int64_t u = prm["u"].get<std::int64_t>();
      if (tr.steps[i].op == "motion") {
        std::int64_t m = prm["m"].get<std::int64_t>();
        // each single motion of the stepwise run against the closed form
        std::int64_t done = 0;
        for (const TraceStep& st : pm_trace(prev, u, m).steps) {
          if (st.op != "motion") continue;
          ++done;
          t.check(pm_explicit(prev, u, done).seq == st.state, "motion " + format_freq(prev));
        }
        t.check(pm_stepwise(prev, u, m).seq == tr.steps[i].state, "motion " + format_freq(prev));
      } else if (tr.steps[i].op == "reverse") {
        ReverseResult a = rpm(prev, u), b = rpm_stepwise(prev, u);
        t.check(a.seq == b.seq && a.steps == b.steps && a.seq == tr.steps[i].state, "reverse " + format_freq(prev));
      }
    }
  };
  for (int k = 1; k <= 3; ++k) {
    std::vector<std::int64_t> zero(static_cast<std::size_t>(k), 0);
    enum_multipartitions(k, 18, zero, std::nullopt, [&](const MultiPartition& mp) {
      MotionTrace tr = lambda_trace(mp);
      const FreqSeq& f = tr.steps.back().state;
      t.check(f == lambda(mp), "trace end " + mp.to_string());
      t.check(max_adjacent_sum(f) <= k && weight(f) == total_size(mp), "image " + mp.to_string());
      t.check(gamma(f, k) == mp, "round trip " + mp.to_string());
      motions_agree(tr);
    });
    for (const FreqSeq& f : enum_freq(k, 18)) {
      MultiPartition mp = gamma(f, k);
      t.check(lambda(mp) == f && total_size(mp) == weight(f), "round trip " + format_freq(f));
      motions_agree(gamma_trace(f));
    }
  }
  MultiPartition ex{{{3, 1}, {}, {6, 6, 5, 3}, {19, 0}}};
  FreqSeq img = lambda(ex);
  std::string out = format_freq(img);
  t.check(out == "(4,0,0,3,0,1,2,1,1,2,1,2,0,3,1,0,0,1)", "example image " + out);
  t.check(weight(img) == 161 && total_size(ex) == 161, "example size");
  t.check(qs::gamma(img, 4) == ex, "example inverse");
  return t.outcome("k <= 3, size <= 18; example " + ex.to_string() + " -> " + out + ", size " +
                   std::to_string(weight(img)));
}

// 7. family generating functions and the f_0 bijections
Outcome interpretations() {
  Tally t;
  const char* rows[] = {"stanton_32", "stanton_42", "nonbinom_kursungoz"};
  const Family xs[] = {Family::X, Family::XPrime, Family::XTilde};
  for (int k = 1; k <= 3; ++k) {
    for (int r = 0; r <= k; ++r) {
      for (int j = 0; r + j <= k; ++j) {
        for (int i = 0; i < 3; ++i) {
          Params p = params(k, r, j);
          if (find_identity(rows[i]).violation(p)) continue;
          t.check(check_interpretation(rows[i], k, r, j, 50).equal, std::string(rows[i]) + krj(k, r, j));
          bool x = equal_up_to(gf_set({xs[i], k, r, j, 0}, 50), lhs(rows[i], p, 50), 50).equal;
          t.check(x, family_name(xs[i]) + krj(k, r, j));
        }
      }
    }
  }
  for (int k = 1; k <= 4; ++k) {
    std::vector<FreqSeq> all = enum_freq(k, 20);
    for (int r = 0; r <= k; ++r) {
      for (int j = 0; r + j <= k; ++j) {
        SetPredicate y{Family::Y, k, r, j, 0}, z{Family::Z, k, r, j, 0};
        SetPredicate yp{Family::YPrime, k, r, j, 0}, zp{Family::ZPrime, k, r, j, 0};
        for (const FreqSeq& f : all) {
          if (membership(y, f)) {
            FreqSeq g = phi(j, r, k, f);
            t.check(membership(z, g) && pi(j, r, k, g) == f && weight(g) == weight(f), "phi " + format_freq(f));
            t.check(membership(yp, f) == membership(zp, g), "primed phi " + format_freq(f));
          }
          if (membership(z, f)) t.check(phi(j, r, k, pi(j, r, k, f)) == f, "pi " + format_freq(f));
        }
      }
    }
  }
  return t.outcome("q-order 25, k <= 3; phi/pi to weight 20");
}

// 8. the Z-tilde relation
Outcome ztilde() {
  Tally t;
  for (int k = 1; k <= 3; ++k) {
    for (int r = 1; r + 1 <= k; ++r) {
      for (int j = 0; j + r + 1 <= k; ++j) {
        ZTildeReport z = check_ztilde_relation(k, r, j, 41);
        t.check(z.gf.equal, "gf " + krj(k, r, j));
        t.check(z.inclusions, "inclusions " + krj(k, r, j));
        t.check(z.shift_bijective, "shift " + krj(k, r, j));
      }
    }
  }
  return t.outcome("weight 20, k <= 3");
}

// 9. degenerations between catalog rows
Outcome reduction_web() {
  const Exp P = 80;
  const QSeries one_plus_q = QSeries::from_terms({{0, 1}, {2, 1}});
  Tally t;
  auto both = [&](const std::string& a, const Params& pa, const std::string& b, const Params& pb,
                  const QSeries& scale) {
    bool l = equal_up_to(scale * lhs(a, pa, P), lhs(b, pb, P), P).equal;
    bool r = equal_up_to(scale * rhs(a, pa, P), rhs(b, pb, P), P).equal;
    t.check(l && r, a + krj(pa.k, pa.r, pa.j) + " vs " + b);
  };
  const QSeries id = QSeries::one();
  for (int k = 1; k <= 4; ++k) {
    for (int r = 0; r <= k; ++r) {
      both("stanton_32", params(k, r, 0), "andrews_gordon", params(k, r, 0), id);
      both("stanton_42", params(k, r, 0), "bressoud_even", params(k, r, 0), id);
      both("nonbinom_kursungoz", params(k, r, 0), "kursungoz_0", params(k, r, 0), one_plus_q);
      both("nonbinom_bgg", params(k, r, 0), "bgg_j0", params(k, r, 0), id);
    }
    for (int j = 0; j <= k; ++j) {
      both("stanton_32", params(k, 0, j), "bressoud_33", params(k, 0, j), id);
      both("stanton_42", params(k, 0, j), "bressoud_35", params(k, 0, j), id);
      both("nonbinom_kursungoz", params(k, 0, j), "kursungoz_j", params(k, 0, j), id);
      both("nonbinom_bgg", params(k, 0, j), "bressoud_gg", params(k, 0, j), id);
    }
  }
  QSeries gg1 = lhs("gollnitz_gordon", params(0, 0, 0, 1), P);
  QSeries gg2 = lhs("gollnitz_gordon", params(0, 0, 0, 2), P);
  t.check(equal_up_to(lhs("bressoud_gg", params(1, 0, 0), P), gg1, P).equal, "k=1 j=0 to GG");
  t.check(equal_up_to(lhs("bressoud_gg", params(1, 0, 1), P), gg1 + gg2, P).equal, "k=1 j=1 to GG");
  QSeries mixed = one_plus_q * lhs("nonbinom_bgg", params(1, 1, 0), P);
  t.check(equal_up_to(mixed, gg1 + gg2.shifted(2), P).equal, "k=1 r=1 to GG");
  return t.outcome("q-order 40, k <= 4");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"catalog sweep", catalog_sweep},
      {"Rogers-Ramanujan q^10 spot check", rr_spot},
      {"theta sum equals triple product", triple_product_check},
      {"Bailey engine", bailey_engine},
      {"BL_INF and STAR1 commute", commutation},
      {"bijection round trips", bijection},
      {"combinatorial interpretations", interpretations},
      {"Z-tilde relation", ztilde},
      {"reduction web", reduction_web},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ["
              << ms << " ms]" << std::endl;
  }
  return all ? 0 : 1;
}
