#include "doctest.h"
#include "qseries/bailey.hpp"

using namespace qs;

namespace {

const SignedMonomial kOne{1, 0};
const SignedMonomial kQ{1, 2};
const SignedMonomial kQ2{1, 4};
const Exp kCheck = 60;
const Exp kWork = 120;

TransformStep step(StepTag t, std::optional<SignedMonomial> p = std::nullopt) { return {t, p}; }

}  // namespace

TEST_CASE("unit pair at a = 1 has the closed-form alpha") {
  BaileyPair p = unit_pair(kOne, 8, kWork);
  CHECK(equal_up_to(p.alpha[0], QSeries::one(), kCheck).equal);
  for (int n = 1; n <= 8; ++n) {
    int sign = n % 2 ? -1 : 1;
    QSeries want = QSeries::from_terms({{Exp{n} * (n - 1), sign}, {Exp{n} * (n - 1) + 2 * n, sign}});
    CHECK(equal_up_to(p.alpha[static_cast<std::size_t>(n)], want, kCheck).equal);
    CHECK(p.beta[static_cast<std::size_t>(n)].is_zero());
  }
}

TEST_CASE("seeds satisfy the pair relation") {
  for (SeedKind kind : {SeedKind::Unit, SeedKind::DPrime1, SeedKind::DPrime4}) {
    for (SignedMonomial a : {kOne, kQ, kQ2}) {
      CHECK(verify(seed_pair(kind, a, 8, kWork), kCheck).ok);
    }
  }
}

TEST_CASE("an injected defect is located") {
  BaileyPair p = unit_pair(kQ, 8, kWork);
  p.beta[2] += QSeries::monomial(1, 6);
  PairCheck c = verify(p, kCheck);
  CHECK_FALSE(c.ok);
  CHECK(*c.first_bad_n == 2);
  CHECK(*c.mismatch == 6);
}

TEST_CASE("BL_INF on the unit pair at a = 1 gives 1/(q)_n") {
  BaileyPair p = apply(step(StepTag::BL_INF), unit_pair(kOne, 8, kWork));
  for (int n = 0; n <= 8; ++n) {
    CHECK(equal_up_to(p.beta[static_cast<std::size_t>(n)], inv_poch_finite(kQ, 2, n, kCheck), kCheck).equal);
  }
  // sum alpha'_l / (q)_inf is (q)_inf beta'_inf = 1
  CHECK(equal_up_to(alpha_limit(p, 40), QSeries::one(), 40).equal);
}

TEST_CASE("two BL_INF steps give the Rogers-Ramanujan sum") {
  ChainResult r = run_chain(unit_pair(kOne, 12, 140), {step(StepTag::BL_INF), step(StepTag::BL_INF)}, 60);
  CHECK(r.all_ok());
  QSeries rr = inv_poch_infinite({1, 2}, 10, 60) * inv_poch_infinite({1, 8}, 10, 60);
  CHECK(equal_up_to(alpha_limit(r.pair, 60), rr, 60).equal);
}

TEST_CASE("every transform preserves the pair relation") {
  for (SeedKind kind : {SeedKind::Unit, SeedKind::DPrime4}) {
    for (SignedMonomial a : {kQ, kQ2}) {
      BaileyPair p = seed_pair(kind, a, 6, kWork);
      for (StepTag t : {StepTag::BL_INF, StepTag::LATTICE_INF, StepTag::KEY1, StepTag::KEY2, StepTag::LOVEJOY_B0,
                        StepTag::STAR}) {
        CHECK(verify(apply(step(t), p), kCheck).ok);
      }
      for (SignedMonomial x : {SignedMonomial{-1, 0}, SignedMonomial{-1, 3}}) {
        CHECK(verify(apply(step(StepTag::BL_RHO, x), p), kCheck).ok);
        CHECK(verify(apply(step(StepTag::LOVEJOY, x), p), kCheck).ok);
      }
    }
  }
  CHECK(verify(apply(step(StepTag::STAR1), unit_pair(kOne, 6, kWork)), kCheck).ok);
}

TEST_CASE("parameter changes") {
  BaileyPair p = unit_pair(kQ2, 4, kWork);
  CHECK(apply(step(StepTag::LATTICE_INF), p).a == kQ);
  CHECK(apply(step(StepTag::KEY1), p).a == kQ);
  CHECK(apply(step(StepTag::LOVEJOY_B0), p).a == SignedMonomial{1, 6});
  CHECK(apply(step(StepTag::STAR), p).a == kQ2);
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(apply(step(StepTag::LATTICE_INF), unit_pair(kOne, 4, kWork)), DegenerateDivision);
  CHECK_THROWS_AS(apply(step(StepTag::STAR1), unit_pair(kQ, 4, kWork)), PreconditionViolated);
  CHECK_THROWS_AS(unit_pair({1, -2}, 4, kWork), PoleAtParameter);
  CHECK_THROWS_AS(check_boundary_lattice(unit_pair(kQ, 6, kWork), 2, 0, 1, Boundary::infinity(),
                                         Boundary::infinity(), 40),
                  UnsupportedBoundary);
  CHECK_THROWS_AS(beta_limit(unit_pair(kQ, 1, kWork), kWork), NotStabilized);
  CHECK_THROWS_AS(verify(unit_pair(kQ, 4, 40), 60), PrecisionExceeded);
}

TEST_CASE("commutation and the STAR split") {
  CHECK(commute_check(unit_pair(kOne, 6, kWork), 40));
  CHECK(commute_check(pair_dprime4(kOne, 6, kWork), 40));
  CHECK(star_split_check(unit_pair(kQ, 6, kWork), 40));
}

TEST_CASE("lattice limits at small k") {
  BaileyPair p1 = unit_pair(kOne, 10, 160);
  BaileyPair pq = unit_pair(kQ, 10, 160);
  for (int k = 1; k <= 2; ++k) {
    for (int r = -1; r <= k; ++r) {
      CHECK(check_lattice(p1, k, r, 60).equal);
      for (int j = 0; r + j <= k; ++j) {
        CHECK(check_double_lattice(pq, k, r, j, 60).equal);
        CHECK(check_star_chain(pq, k, r, j, 60).equal);
        if (r >= 0) {
          CHECK(check_boundary_lattice(pq, k, r, j, Boundary::infinity(), Boundary::finite({-1, 2}), 60).equal);
          CHECK(check_boundary_lattice(pq, k, r, j, Boundary::finite({-1, 0}), Boundary::infinity(), 60).equal);
        }
      }
    }
  }
}

TEST_CASE("star chain subsets") {
  BaileyPair pq = unit_pair(kQ, 10, 160);
  CHECK(check_star_chain(pq, 3, 0, 2, 60, std::vector<int>{1, 3}).equal);
  CHECK(check_star_chain(pq, 3, 0, 2, 60, std::vector<int>{2, 3}).equal);
}

TEST_CASE("chains replicate their limits") {
  CHECK(replicate_star_chain(unit_pair(kQ, 10, 160), 2, 0, 1, 60).ok());
  CHECK(replicate_double_lattice(unit_pair(kQ2, 10, 160), 2, 0, 1, 60).ok());
  CHECK(replicate_boundary_lattice(unit_pair(kQ2, 10, 160), 3, 0, 2, Boundary::infinity(),
                                   Boundary::finite({-1, 2}), 60)
            .ok());
  BaileyPair s = pair_dprime1(kQ, 10, 160);
  ChainResult c = run_chain(s, star_chain_steps(2, 0, 1), 60);
  for (int n = 0; n <= 10; ++n) {
    CHECK(equal_up_to(c.pair.alpha[static_cast<std::size_t>(n)], star_chain_alpha(s, 2, 0, 1, n), 60).equal);
  }
}

TEST_CASE("beta_limit agrees with the alpha side") {
  ChainResult c = run_chain(unit_pair(kQ, 20, 80), {step(StepTag::BL_INF), step(StepTag::BL_INF)}, 60);
  QSeries b = beta_limit(c.pair, 16);
  CHECK(equal_up_to(b * poch_infinite(kQ, 2, 16), alpha_limit(c.pair, 16), 16).equal);
}

TEST_CASE("monomials and recipes") {
  CHECK(parse_monomial("1") == SignedMonomial{1, 0});
  CHECK(parse_monomial("-q") == SignedMonomial{-1, 2});
  CHECK(parse_monomial("q^3") == SignedMonomial{1, 6});
  CHECK(parse_monomial("q^3/2") == SignedMonomial{1, 3});
  CHECK(parse_monomial("-q^-1") == SignedMonomial{-1, -2});
  CHECK(monomial_name({1, 2}) == "q");
  CHECK(parse_monomial(monomial_name({-1, 3})) == SignedMonomial{-1, 3});
  CHECK_THROWS_AS(parse_monomial("x^2"), InvalidParameters);

  nlohmann::json j = nlohmann::json::parse(
      R"({"seed": {"kind": "unit", "a": "q"}, "steps": [{"tag": "BL_INF"}, {"tag": "BL_RHO", "rho": "-q"}], "prec": 20})");
  Recipe r = parse_recipe(j);
  CHECK(r.kind == SeedKind::Unit);
  CHECK(r.a == kQ);
  CHECK(r.steps.size() == 2);
  CHECK(*r.steps[1].param == SignedMonomial{-1, 2});
  CHECK_THROWS_AS(parse_recipe(nlohmann::json::parse(R"({"steps": []})")), InvalidParameters);
  CHECK_THROWS_AS(parse_tag("BL_NOPE"), InvalidParameters);

  ChainResult c = run_chain(unit_pair(kQ, 6, kWork), r.steps, 40);
  nlohmann::json log = chain_log_json(c);
  CHECK(log["ok"] == true);
  CHECK(log["steps"].size() == 2);
  CHECK(log["steps"][0]["step"] == "BL_INF");
}
