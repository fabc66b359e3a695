#pragma once

#include <functional>
#include <vector>

#include "qseries/series.hpp"

namespace qs {

// sum over s_1 >= ... >= s_k >= 0 of
//   prod_i alt_i^{s_i} t^{quad_i s_i^2 + lin_i s_i}
//   * prod_{(i, w) in branches} (1 + t^{w (s_{i-1} + s_i)})
//   * head(s_1) / prod_{i<k} (t^d; t^d)_{s_i - s_{i+1}} * leaf(s)
// Indices are 0-based here. head and leaf must have non-negative valuation
// except that leaf may go down to leaf_val_lb.
struct MultisumSpec {
  int k = 1;
  std::vector<Exp> quad;
  std::vector<Exp> lin;
  std::vector<int> alt;
  Exp diff_base = 2;
  std::vector<std::pair<int, Exp>> branches;
  std::function<QSeries(Exp s1, Exp prec)> head;
  std::function<QSeries(const std::vector<Exp>& s, Exp prec)> leaf;
  Exp leaf_val_lb = 0;

  explicit MultisumSpec(int k_ = 1)
      : k(k_), quad(static_cast<std::size_t>(k_), 2), lin(static_cast<std::size_t>(k_), 0),
        alt(static_cast<std::size_t>(k_), 1) {}
};

QSeries eval_multisum(const MultisumSpec& spec, Exp prec);

// min over integers s >= 0 of quad*s^2 + lin*s (quad > 0).
Exp quadratic_min(Exp quad, Exp lin);

}  // namespace qs
