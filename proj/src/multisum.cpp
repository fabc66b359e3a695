#include "qseries/multisum.hpp"

#include <map>
#include <optional>

#include "qseries/qfunctions.hpp"

namespace qs {

Exp quadratic_min(Exp quad, Exp lin) {
  Exp best = 0;
  for (Exp s = 1;; ++s) {
    Exp v = quad * s * s + lin * s;
    if (v >= best) break;
    best = v;
  }
  return best;
}

namespace {

class Enumerator {
 public:
  Enumerator(const MultisumSpec& spec, Exp prec) : spec_(spec), prec_(prec) {
    std::size_t k = static_cast<std::size_t>(spec.k);
    suffix_min_.assign(k + 1, 0);
    for (std::size_t i = k; i-- > 0;) {
      if (spec.quad[i] <= 0) throw OutOfRange("multisum needs positive quadratic coefficients");
      suffix_min_[i] = suffix_min_[i + 1] + quadratic_min(spec.quad[i], spec.lin[i]);
    }
    floor_ = suffix_min_[0] + spec.leaf_val_lb;
    s_.assign(k, 0);
    acc_ = QSeries::zero(prec);
  }

  QSeries run() {
    if (floor_ >= prec_) return acc_;
    cache_.emplace(spec_.diff_base, prec_ - floor_);
    descend(0, 0, QSeries::one());
    if (acc_.prec() < prec_) {
      throw PrecisionExceeded("multisum lost precision: " + std::to_string(acc_.prec()) +
                              " < " + std::to_string(prec_));
    }
    return acc_;
  }

 private:
  const MultisumSpec& spec_;
  Exp prec_;
  Exp floor_;
  std::vector<Exp> suffix_min_;
  std::vector<Exp> s_;
  std::optional<InvPochCache> cache_;
  QSeries acc_;

  void descend(int i, Exp prefix, const QSeries& running) {
    std::size_t ui = static_cast<std::size_t>(i);
    Exp q = spec_.quad[ui], l = spec_.lin[ui];
    Exp upper = i == 0 ? -1 : s_[ui - 1];
    for (Exp s = 0; upper < 0 || s <= upper; ++s) {
      Exp e = q * s * s + l * s;
      Exp bound = prefix + e + suffix_min_[ui + 1] + spec_.leaf_val_lb;
      if (bound >= prec_) {
        bool rising = q * (s + 1) * (s + 1) + l * (s + 1) >= e;
        if (rising) break;
        continue;
      }
      s_[ui] = s;
      QSeries p;
      if (i == 0) {
        p = spec_.head ? spec_.head(s, prec_ - bound) : QSeries::one();
        if (!p.is_zero() && p.valuation() < 0) {
          throw OutOfRange("multisum head factor has negative valuation");
        }
      } else {
        p = running * cache_->get(s_[ui - 1] - s);
      }
      p.truncate(prec_ - bound);
      if (i + 1 < spec_.k) {
        descend(i + 1, prefix + e, p);
      } else {
        emit(prefix + e, p);
      }
    }
  }

  void emit(Exp exponent, const QSeries& running) {
    QSeries leaf = spec_.leaf ? spec_.leaf(s_, prec_ - exponent) : QSeries::one();
    QSeries term = running * leaf;
    int sign = 1;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (spec_.alt[i] < 0 && s_[i] % 2 == 1) sign = -sign;
    }
    std::map<Exp, mpz_class> branch{{0, 1}};
    for (auto [idx, w] : spec_.branches) {
      Exp be = w * (s_[static_cast<std::size_t>(idx - 1)] + s_[static_cast<std::size_t>(idx)]);
      std::map<Exp, mpz_class> next = branch;
      for (const auto& [x, c] : branch) next[x + be] += c;
      branch = std::move(next);
    }
    for (const auto& [x, c] : branch) {
      QSeries piece = term.shifted(exponent + x);
      piece *= mpz_class(c * sign);
      acc_ += piece;
    }
  }
};

}  // namespace

QSeries eval_multisum(const MultisumSpec& spec, Exp prec) {
  if (spec.k <= 0) {
    return spec.leaf ? spec.leaf({}, prec).truncate(prec) : QSeries::one(prec);
  }
  Enumerator en(spec, prec);
  return en.run();
}

}  // namespace qs
