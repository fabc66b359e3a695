#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qseries/qfunctions.hpp"

namespace qs {

// Finite prefix (alpha_n, beta_n), 0 <= n <= n_max, of a Bailey pair
// relative to a. Exponents are in t = q^(1/2); prec is the working order.
struct BaileyPair {
  SignedMonomial a;
  int n_max = 0;
  std::vector<QSeries> alpha;
  std::vector<QSeries> beta;
  Exp prec = 0;

  QSeries alpha_at(int n) const { return n < 0 ? QSeries::zero() : alpha.at(static_cast<std::size_t>(n)); }
};

enum class SeedKind { Unit, DPrime1, DPrime4 };

BaileyPair unit_pair(SignedMonomial a, int n_max, Exp prec);
BaileyPair pair_dprime4(SignedMonomial a, int n_max, Exp prec);
BaileyPair pair_dprime1(SignedMonomial a, int n_max, Exp prec);
BaileyPair seed_pair(SeedKind kind, SignedMonomial a, int n_max, Exp prec);

enum class StepTag { BL_INF, BL_RHO, LATTICE_INF, KEY1, KEY2, LOVEJOY_B0, LOVEJOY, STAR, STAR1 };

struct TransformStep {
  StepTag tag = StepTag::BL_INF;
  // rho for BL_RHO, b for LOVEJOY
  std::optional<SignedMonomial> param;

  std::string name() const;
};

std::string tag_name(StepTag tag);
StepTag parse_tag(const std::string& s);
SeedKind parse_seed_kind(const std::string& s);
// "1", "-1", "q", "-q^3", "q^3/2", "-q^-1" and so on.
SignedMonomial parse_monomial(const std::string& s);
std::string monomial_name(SignedMonomial m);

BaileyPair apply(const TransformStep& step, const BaileyPair& p);

struct PairCheck {
  bool ok = true;
  std::optional<int> first_bad_n;
  std::optional<Exp> mismatch;
};

PairCheck verify(const BaileyPair& p, Exp prec);

// beta of (BL_INF then STAR1) against beta of (STAR1 then BL_INF).
bool commute_check(const BaileyPair& p, Exp prec);

// sum_l alpha_l / (aq)_inf, which is (q)_inf * beta_inf.
QSeries alpha_limit(const BaileyPair& p, Exp prec);
// Stabilized beta_n, cross-checked against alpha_limit / (q)_inf.
QSeries beta_limit(const BaileyPair& p, Exp prec);

struct ChainLogEntry {
  std::string step;
  SignedMonomial a;
  PairCheck check;
};

struct ChainResult {
  BaileyPair pair;
  std::vector<ChainLogEntry> log;
  bool all_ok() const;
};

ChainResult run_chain(const BaileyPair& seed, const std::vector<TransformStep>& steps, Exp prec);

struct Boundary {
  std::optional<SignedMonomial> value;

  static Boundary infinity() { return {}; }
  static Boundary finite(SignedMonomial m) { return {m}; }
  bool is_infinite() const { return !value.has_value(); }
};

struct Sides {
  QSeries lhs;
  QSeries rhs;
};

// Single-lattice multisum against its alpha-sum, -1 <= r <= k.
Sides lattice_sides(const BaileyPair& p, int k, int r, Exp prec);
Comparison check_lattice(const BaileyPair& p, int k, int r, Exp prec);

// Two-lattice multisum with j indices shifted twice, r >= -1, j >= 0, r + j <= k.
Sides double_lattice_sides(const BaileyPair& p, int k, int r, int j, Exp prec);
Comparison check_double_lattice(const BaileyPair& p, int k, int r, int j, Exp prec);

// Two-lattice multisum with boundary parameters b (outermost index) and
// c (innermost index); 0 <= r, j and r + j <= k.
Sides boundary_lattice_sides(const BaileyPair& p, int k, int r, int j, Boundary b, Boundary c,
                             Exp prec);
Comparison check_boundary_lattice(const BaileyPair& p, int k, int r, int j, Boundary b,
                                  Boundary c, Exp prec);

// Limit of the STAR1 chain for a pair relative to q. The factors are taken
// from `subset` (default {1..j}) inside {1..max(1, k-r)}.
Sides star_chain_sides(const BaileyPair& p, int k, int r, int j, Exp prec,
                       std::optional<std::vector<int>> subset = std::nullopt);
Comparison check_star_chain(const BaileyPair& p, int k, int r, int j, Exp prec,
                            std::optional<std::vector<int>> subset = std::nullopt);

// Step lists that produce the multisums above from a seed.
std::vector<TransformStep> star_chain_steps(int k, int r, int j);
std::vector<TransformStep> double_lattice_steps(int k, int r, int j);
std::vector<TransformStep> boundary_lattice_steps(int k, int r, int j, Boundary b, Boundary c);

// Closed form of alpha after star_chain_steps on a pair relative to q.
QSeries star_chain_alpha(const BaileyPair& seed, int k, int r, int j, int n);

// Runs the chain, checks every step and compares the limit of the final
// pair with the corresponding multisum evaluated at the seed.
struct ChainReplication {
  ChainResult chain;
  Comparison limit;
  bool ok() const { return chain.all_ok() && limit.equal; }
};

ChainReplication replicate_star_chain(const BaileyPair& seed, int k, int r, int j, Exp prec);
ChainReplication replicate_double_lattice(const BaileyPair& seed, int k, int r, int j, Exp prec);
ChainReplication replicate_boundary_lattice(const BaileyPair& seed, int k, int r, int j,
                                            Boundary b, Boundary c, Exp prec);

// STAR against the sum of the KEY1, BL_INF, LOVEJOY_B0 and the BL_INF, KEY2,
// LOVEJOY_B0 routes.
bool star_split_check(const BaileyPair& p, Exp prec);

struct Recipe {
  SeedKind kind = SeedKind::Unit;
  SignedMonomial a{1, 2};
  int n_max = 10;
  std::vector<TransformStep> steps;
  Exp prec = 0;  // in q
};

Recipe parse_recipe(const nlohmann::json& j);
nlohmann::json chain_log_json(const ChainResult& r);

}  // namespace qs
