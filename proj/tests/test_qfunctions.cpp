#include <vector>

#include "doctest.h"
#include "qseries/qfunctions.hpp"

using namespace qs;

namespace {

// Number of partitions of n into parts from `allowed`, by counting recursion.
std::vector<long> count_partitions(int n_max, const std::vector<int>& allowed) {
  std::vector<long> c(static_cast<std::size_t>(n_max + 1), 0);
  c[0] = 1;
  for (int part : allowed) {
    for (int e = part; e <= n_max; ++e) c[static_cast<std::size_t>(e)] += c[static_cast<std::size_t>(e - part)];
  }
  return c;
}

// Partitions of n fitting in an m x (n_total - m) box, by direct recursion.
long box_count(int n, int parts_left, int max_part) {
  if (n == 0) return 1;
  if (parts_left == 0 || max_part == 0) return 0;
  long total = 0;
  for (int p = 1; p <= std::min(n, max_part); ++p) total += box_count(n - p, parts_left - 1, p);
  return total;
}

}  // namespace

TEST_CASE("finite Pochhammer matches the expanded product") {
  // (q; q)_3 = (1-q)(1-q^2)(1-q^3) = 1 - q - q^2 + q^4 + q^5 - q^6
  QSeries p = poch_finite({1, 2}, 2, 3);
  std::vector<std::pair<Exp, int>> want{{0, 1}, {2, -1}, {4, -1}, {8, 1}, {10, 1}, {12, -1}};
  CHECK(p.size() == 13);
  for (auto [e, c] : want) CHECK(p.coeff(e) == c);
  CHECK(p.coeff(6) == 0);
  CHECK(poch_finite({1, 2}, 2, 0) == QSeries::one());
}

TEST_CASE("1/(q)_inf counts partitions") {
  const int n = 60;
  QSeries inv = inv_poch_infinite({1, 2}, 2, 2 * n);
  std::vector<int> all;
  for (int i = 1; i <= n; ++i) all.push_back(i);
  auto want = count_partitions(n - 1, all);
  for (int e = 0; e < n; ++e) CHECK(inv.coeff(2 * e) == want[static_cast<std::size_t>(e)]);
  CHECK(want[10] == 42);
}

TEST_CASE("1/(q)_n counts partitions into parts at most n") {
  for (int m = 0; m <= 6; ++m) {
    QSeries inv = inv_poch_finite({1, 2}, 2, m, 80);
    std::vector<int> allowed;
    for (int i = 1; i <= m; ++i) allowed.push_back(i);
    auto want = count_partitions(39, allowed);
    for (int e = 0; e < 40; ++e) CHECK(inv.coeff(2 * e) == want[static_cast<std::size_t>(e)]);
  }
}

TEST_CASE("Euler's pentagonal theorem") {
  QSeries e = poch_infinite({1, 2}, 2, 200);
  std::vector<long> want(100, 0);
  for (int k = -10; k <= 10; ++k) {
    int g = k * (3 * k - 1) / 2;
    if (g < 100) want[static_cast<std::size_t>(g)] += (k % 2 == 0) ? 1 : -1;
  }
  for (int n = 0; n < 100; ++n) CHECK(e.coeff(2 * n) == want[static_cast<std::size_t>(n)]);
}

TEST_CASE("Gaussian binomials count partitions in a box") {
  for (int n = 0; n <= 7; ++n) {
    for (int m = 0; m <= n; ++m) {
      QSeries g = qbinom(n, m, 2);
      for (int e = 0; e <= m * (n - m) + 1; ++e) {
        CHECK(g.coeff(2 * e) == box_count(e, m, n - m));
      }
    }
  }
  CHECK_THROWS_AS(qbinom(3, 4, 2), OutOfRange);
}

TEST_CASE("triple product equals the theta sum") {
  for (Exp m = 2; m <= 12; ++m) {
    for (Exp a = 1; a < m; ++a) {
      CHECK(equal_up_to(triple_product(2 * m, 2 * a, 200), theta_sum(2 * m, 2 * a, 200), 200).equal);
    }
  }
  CHECK_THROWS_AS(triple_product(10, 10, 40), DegenerateTheta);
  CHECK_THROWS_AS(triple_product(10, 0, 40), DegenerateTheta);
}

TEST_CASE("Rogers-Ramanujan product side counts residue-restricted partitions") {
  // 1/((q;q^5)(q^4;q^5)) against parts congruent to 1 or 4 mod 5
  QSeries g = inv_poch_infinite({1, 2}, 10, 100) * inv_poch_infinite({1, 8}, 10, 100);
  std::vector<int> allowed;
  for (int i = 1; i < 50; ++i) {
    if (i % 5 == 1 || i % 5 == 4) allowed.push_back(i);
  }
  auto want = count_partitions(49, allowed);
  for (int e = 0; e < 50; ++e) CHECK(g.coeff(2 * e) == want[static_cast<std::size_t>(e)]);
}

TEST_CASE("inverse cache agrees with direct inversion") {
  InvPochCache cache(2, 60);
  for (Exp n = 0; n <= 12; ++n) CHECK(cache.get(n) == inv_poch_finite({1, 2}, 2, n, 60));
  CHECK_THROWS_AS(cache.get(-1), NegativeIndex);
}

TEST_CASE("degenerate and non-unit factors") {
  CHECK_THROWS_AS(inv_poch_finite({1, 0}, 2, 2, 20), DegenerateDivision);
  CHECK_THROWS_AS(inv_poch_finite({-1, 0}, 2, 2, 20), NotAUnit);
  CHECK_THROWS_AS(poch_finite({1, 2}, 2, -1), NegativeIndex);
  CHECK_THROWS_AS(poch_infinite({1, 2}, 0, 20), Divergent);
  CHECK_THROWS_AS(poch_infinite({1, 2}, 2, kExact), PrecisionExceeded);
}

TEST_CASE("negative exponents in a factor are normalized") {
  // (q^-1; q)_2 = (1 - q^-1)(1 - 1) = 0
  CHECK(poch_finite({1, -2}, 2, 2).is_zero());
  // (q^-1; q)_1 = 1 - q^-1
  QSeries p = poch_finite({1, -2}, 2, 1);
  CHECK(p.coeff(-2) == -1);
  CHECK(p.coeff(0) == 1);
}
