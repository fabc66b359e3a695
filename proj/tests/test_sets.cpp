#include "doctest.h"
#include "qseries/identities.hpp"
#include "qseries/qfunctions.hpp"
#include "qseries/sets.hpp"

using namespace qs;

namespace {

// All sequences f_0..f_n with f_i <= k and sum i f_i <= w, filtered by the
// adjacent-sum rule afterwards.
std::vector<FreqSeq> brute_a_k(int k, std::int64_t w) {
  std::vector<FreqSeq> out;
  FreqSeq cur;
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t i, std::int64_t left) {
    if (i > w) {
      FreqSeq c = canonical(cur);
      if (max_adjacent_sum(c) <= k) out.push_back(c);
      return;
    }
    for (std::int64_t x = 0; x <= k && i * x <= left; ++x) {
      cur.push_back(x);
      rec(i + 1, left - i * x);
      cur.pop_back();
    }
  };
  rec(0, w);
  return out;
}

SetPredicate pred(Family f, int k, int r = 0, int j = 0, int s = 0) { return {f, k, r, j, s}; }

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("Zp") == Family::ZPrime);
  CHECK(family_name(Family::YTildeSk) == "Ytsk");
  CHECK(pred(Family::Z, 2, 1, 1).name() == "Z(k=2,r=1,j=1)");
  CHECK_THROWS_AS(parse_family("W"), InvalidParameters);
  CHECK(pred(Family::X, 2).on_multipartitions());
  CHECK_FALSE(pred(Family::ZTilde, 2).on_multipartitions());
}

TEST_CASE("membership examples") {
  CHECK_FALSE(membership(pred(Family::Z, 2, 1, 1), FreqSeq{1, 1}));
  CHECK(membership(pred(Family::Z, 2, 1, 1), FreqSeq{1}));
  MultiPartition ex{{{3, 1}, {}, {6, 6, 5, 3}, {19, 0}}};
  CHECK(membership(pred(Family::X, 4, 0, 4), ex));
  CHECK_FALSE(membership(pred(Family::X, 4, 0, 0), ex));
  CHECK_FALSE(membership(pred(Family::A, 2), FreqSeq{1, 2}));
  CHECK(membership(pred(Family::Gordon, 2, 1), FreqSeq{0, 1, 1}));
  CHECK_FALSE(membership(pred(Family::Gordon, 2, 1), FreqSeq{0, 2}));
}

TEST_CASE("kind and domain errors") {
  CHECK_THROWS_AS(membership(pred(Family::X, 2), FreqSeq{1}), KindMismatch);
  CHECK_THROWS_AS(membership(pred(Family::Z, 2), MultiPartition{{{}, {}}}), KindMismatch);
  CHECK_THROWS_AS(enumerate_freq(pred(Family::X, 2), 4), KindMismatch);
  CHECK_THROWS_AS(enumerate_multipartitions(pred(Family::Z, 2), 4), KindMismatch);
  CHECK_THROWS_AS(pred(Family::Z, 2, 2, 1).validate(), InvalidParameters);
  CHECK_THROWS_AS(pred(Family::Ysk, 2, 0, 0, 3).validate(), InvalidParameters);
  CHECK_THROWS_AS(pred(Family::A, 0).validate(), InvalidParameters);
}

TEST_CASE("A_k enumeration against brute force") {
  CHECK(enum_freq(1, 2).size() == 5);
  CHECK(enum_freq(3, 20).size() == 3378);
  for (int k = 1; k <= 3; ++k) {
    std::vector<FreqSeq> fast = enum_freq(k, 12);
    std::vector<FreqSeq> slow = brute_a_k(k, 12);
    std::sort(fast.begin(), fast.end());
    std::sort(slow.begin(), slow.end());
    CHECK(fast == slow);
  }
}

TEST_CASE("A_k is counted by k-multipartitions through the insertion map") {
  for (int k = 1; k <= 3; ++k) {
    QSeries lhs = gf_set(pred(Family::A, k), 40);
    std::vector<std::int64_t> zero(static_cast<std::size_t>(k), 0);
    std::map<std::int64_t, int> counts;
    enum_multipartitions(k, 19, zero, std::nullopt, [&](const MultiPartition& mp) { ++counts[total_size(mp)]; });
    std::vector<std::pair<Exp, mpz_class>> terms;
    for (auto [n, c] : counts) terms.emplace_back(2 * n, c);
    CHECK(equal_up_to(lhs, QSeries::from_terms(terms, 40), 40).equal);
  }
}

TEST_CASE("phi and pi") {
  CHECK(phi(2, 1, 3, {3}) == FreqSeq{2});
  CHECK(pi(2, 1, 3, {2}) == FreqSeq{3});
  CHECK_THROWS_AS(phi(2, 1, 3, {2}), NotAMember);
  for (int k = 1; k <= 4; ++k) {
    for (int r = 0; r <= k; ++r) {
      for (int j = 0; r + j <= k; ++j) {
        SetPredicate y = pred(Family::Y, k, r, j), z = pred(Family::Z, k, r, j);
        std::size_t ny = 0, nz = 0;
        for (const FreqSeq& f : enum_freq(k, 20)) {
          if (membership(y, f)) {
            FreqSeq g = phi(j, r, k, f);
            REQUIRE(membership(z, g));
            REQUIRE(pi(j, r, k, g) == f);
            REQUIRE(membership(pred(Family::YPrime, k, r, j), f) == membership(pred(Family::ZPrime, k, r, j), g));
            ++ny;
          }
          if (membership(z, f)) {
            REQUIRE(phi(j, r, k, pi(j, r, k, f)) == f);
            ++nz;
          }
        }
        CHECK(ny > 0);
        CHECK(nz > 0);
      }
    }
  }
}

TEST_CASE("the insertion map carries X families into Z families") {
  for (int k = 1; k <= 3; ++k) {
    for (int r = 0; r <= k; ++r) {
      for (int j = 0; r + j <= k; ++j) {
        for (auto [xf, zf] : {std::pair{Family::X, Family::Z}, std::pair{Family::XPrime, Family::ZPrime},
                              std::pair{Family::XTilde, Family::ZTilde}}) {
          if (xf == Family::XTilde && r + j == k) continue;
          for (const MultiPartition& mp : enumerate_multipartitions(pred(xf, k, r, j), 14)) {
            FreqSeq f = lambda(mp);
            REQUIRE(membership(pred(zf, k, r, j), f));
            REQUIRE(weight(f) == total_size(mp));
            // every intermediate state of the trace stays in A_k
            for (const TraceStep& st : lambda_trace(mp).steps) REQUIRE(max_adjacent_sum(st.state) <= k);
          }
        }
      }
    }
  }
}

TEST_CASE("X generating functions match the sum sides") {
  const char* rows[] = {"stanton_32", "stanton_42", "nonbinom_kursungoz"};
  const Family fams[] = {Family::X, Family::XPrime, Family::XTilde};
  for (int k = 1; k <= 2; ++k) {
    for (int r = 0; r <= k; ++r) {
      for (int j = 0; r + j <= k; ++j) {
        for (int i = 0; i < 3; ++i) {
          Params p;
          p.k = k;
          p.r = r;
          p.j = j;
          if (find_identity(rows[i]).violation(p)) continue;
          QSeries lhs = eval_sum(find_identity(rows[i]).lhs(p), 40);
          CHECK(equal_up_to(gf_set(pred(fams[i], k, r, j), 40), lhs, 40).equal);
        }
      }
    }
  }
}

TEST_CASE("frequency interpretations") {
  CHECK(interpretation_family("stanton_32") == Family::Z);
  CHECK(interpretation_family("stanton_42") == Family::ZPrime);
  CHECK(interpretation_family("nonbinom_kursungoz") == Family::ZTilde);
  CHECK_THROWS_AS(interpretation_family("rogers_ramanujan"), InvalidParameters);
  for (int k = 1; k <= 3; ++k) {
    for (int r = 0; r <= k; ++r) {
      for (int j = 0; r + j <= k; ++j) {
        for (const char* row : {"stanton_32", "stanton_42", "nonbinom_kursungoz"}) {
          Params p;
          p.k = k;
          p.r = r;
          p.j = j;
          if (find_identity(row).violation(p)) continue;
          Report rep = check_interpretation(row, k, r, j, 40);
          CHECK_MESSAGE(rep.equal, rep.to_text());
        }
      }
    }
  }
}

TEST_CASE("Gordon sets against residue-class partitions") {
  CHECK(oracle_mod_partitions(5, {0, 1, 4}, 20).coeff(8) == 1);
  for (int k = 1; k <= 3; ++k) {
    for (int r = 0; r <= k; ++r) {
      QSeries want = oracle_mod_partitions(2 * k + 3, {0, k - r + 1, -(k - r + 1)}, 40);
      CHECK(equal_up_to(gf_set(pred(Family::Gordon, k, r), 40), want, 40).equal);
    }
  }
}

TEST_CASE("fixed-head sets are triple products over (q)_inf") {
  const Exp P = 40;
  for (int k = 1; k <= 3; ++k) {
    for (int s = 0; s <= k; ++s) {
      QSeries inv = inv_poch_infinite({1, 2}, 2, P);
      QSeries y = triple_product(2 * (2 * k + 3), 2 * (k + 1 - s), P) * inv;
      CHECK(equal_up_to(gf_set(pred(Family::Ysk, k, 0, 0, s), P), y, P).equal);
      QSeries yp = triple_product(2 * (2 * k + 2), 2 * (k + 1 - s), P) * inv;
      CHECK(equal_up_to(gf_set(pred(Family::YPrimeSk, k, 0, 0, s), P), yp, P).equal);
      if (s < k) {
        QSeries yt = triple_product(2 * (2 * k + 2), 2 * (k - s), P) * inv;
        CHECK(equal_up_to(gf_set(pred(Family::YTildeSk, k, 0, 0, s), P), yt, P).equal);
      }
    }
  }
}

TEST_CASE("Z-tilde relation") {
  for (int k = 2; k <= 3; ++k) {
    for (int r = 1; r + 1 <= k; ++r) {
      for (int j = 0; j + r + 1 <= k; ++j) {
        ZTildeReport z = check_ztilde_relation(k, r, j, 41);
        CHECK(z.gf.equal);
        CHECK(z.inclusions);
        CHECK(z.shift_bijective);
      }
    }
  }
  CHECK_THROWS_AS(check_ztilde_relation(2, 0, 0, 20), InvalidParameters);
  CHECK_THROWS_AS(check_ztilde_relation(2, 1, 1, 20), InvalidParameters);
}

TEST_CASE("enumeration respects the size bound") {
  for (const MultiPartition& mp : enumerate_multipartitions(pred(Family::XPrime, 2, 0, 1), 12)) {
    CHECK(total_size(mp) <= 12);
    CHECK(membership(pred(Family::XPrime, 2, 0, 1), mp));
  }
  for (const FreqSeq& f : enumerate_freq(pred(Family::ZTilde, 3, 1, 1), 12)) {
    CHECK(weight(f) <= 12);
  }
}
