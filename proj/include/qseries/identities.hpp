#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qseries/qfunctions.hpp"

namespace qs {

// Left-hand multisum shape. Index sets are 1-based.
struct SumSide {
  int k = 1;
  Exp scale = 1;
  Exp last_base = 1;
  std::vector<int> subtract_set;
  std::vector<int> add_set;
  Exp extra_last = 0;
  std::optional<std::vector<int>> binom_subset;
  bool bgg_tail = false;
  // (x; q^scale)_{s_1} (-1)^{s_1} x^{-s_1} q^{-scale*C(s_1,2)} on top of the
  // plain quadratic form
  std::optional<SignedMonomial> head_poch;
  // divides by (x; t^base)_{s_k}
  std::optional<std::pair<SignedMonomial, Exp>> tail_poch;
  QSeries prefactor = QSeries::one();
};

QSeries eval_sum(const SumSide& side, Exp prec);

// weight * t^shift * (t^a, t^(modulus-a), t^modulus; t^modulus)_inf
struct ProductTerm {
  mpz_class weight = 1;
  Exp shift = 0;
  Exp modulus = 0;
  Exp a = 0;
};

enum class ThetaRoute { Product, Sum };

struct ProductSide {
  std::vector<ProductTerm> terms;
  std::function<QSeries(Exp prec)> prefactor;
  // the side is the prefactor alone
  bool prefactor_only = false;
};

QSeries eval_product(const ProductSide& side, Exp prec, ThetaRoute route = ThetaRoute::Product);

struct Params {
  int k = 0;
  int r = 0;
  int j = 0;
  int a = 0;
  std::optional<std::vector<int>> subset;
};

struct IdentitySpec {
  std::string name;
  std::vector<std::string> param_names;
  bool has_subsets = false;
  std::function<std::optional<std::string>(const Params&)> violation;
  std::function<SumSide(const Params&)> lhs;
  std::function<ProductSide(const Params&)> rhs;
};

const std::vector<IdentitySpec>& catalog();
const IdentitySpec& find_identity(const std::string& name);
nlohmann::json params_json(const IdentitySpec& spec, const Params& p);

// All T in {1..max(1, k-r)} with |T| = j, in lexicographic order.
std::vector<std::vector<int>> binom_subsets(int k, int r, int j);
// Every valid parameter tuple with k <= max_k; binomial rows expand subsets.
std::vector<Params> valid_params(const IdentitySpec& spec, int max_k);

struct Report {
  std::string name;
  nlohmann::json params;
  Exp prec = 0;
  bool equal = false;
  std::optional<Exp> first_mismatch;
  std::int64_t elapsed_ms = 0;
  std::string error;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

Report verify_identity(const std::string& name, const Params& p, Exp prec);
std::vector<Report> verify_subset_variants(const std::string& name, int k, int r, int j, Exp prec);
std::vector<Report> sweep(int max_k, Exp prec, int jobs = 1);

}  // namespace qs
