#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qseries/identities.hpp"
#include "qseries/motion.hpp"
#include "qseries/series.hpp"

namespace qs {

enum class Family {
  A,         // f_i + f_{i+1} <= k
  Gordon,    // plus f_0 = 0, f_1 <= k - r
  X,         // multipartitions with part lower bounds
  Y,         // f_0 in {l + max(l - (j - r), 0)}
  Z,         // f_0 <= j - max(f_0 + f_1 - (k - r), 0)
  XPrime,
  YPrime,
  ZPrime,
  XTilde,
  YTilde,
  ZTilde,
  Ysk,       // f_0 = s
  YPrimeSk,  // f_0 = s, parity k - s
  YTildeSk,  // f_0 = s, parity k - s + 1
};

struct SetPredicate {
  Family family = Family::A;
  int k = 1;
  int r = 0;
  int j = 0;
  int s = 0;

  bool on_multipartitions() const;
  // Throws InvalidParameters when the parameters are outside the family's domain.
  void validate() const;
  std::string name() const;
};

Family parse_family(const std::string& s);
std::string family_name(Family f);

bool membership(const SetPredicate& pred, const FreqSeq& f);
bool membership(const SetPredicate& pred, const MultiPartition& mp);

// Size of an X-family member: parts plus the frame weight.
std::int64_t total_size(const MultiPartition& mp);

// Every f in A_k with weight <= max_weight, each once.
void enum_freq(int k, std::int64_t max_weight, const std::function<void(const FreqSeq&)>& visit);
std::vector<FreqSeq> enum_freq(int k, std::int64_t max_weight);

// Every k-multipartition of total size <= max_size whose list m has parts
// >= lower[m-1] (clamped at 0). last_parity, when set, fixes the parity of
// the parts of list k.
void enum_multipartitions(int k, std::int64_t max_size, const std::vector<std::int64_t>& lower,
                          std::optional<int> last_parity,
                          const std::function<void(const MultiPartition&)>& visit);

// Members of a family with size <= max_weight.
std::vector<FreqSeq> enumerate_freq(const SetPredicate& pred, std::int64_t max_weight);
std::vector<MultiPartition> enumerate_multipartitions(const SetPredicate& pred,
                                                      std::int64_t max_size);

FreqSeq phi(int j, int r, int k, const FreqSeq& f);
FreqSeq pi(int j, int r, int k, const FreqSeq& g);

// Sum of q^size over members; prec in t = q^(1/2).
QSeries gf_set(const SetPredicate& pred, Exp prec);

// Partitions into parts avoiding the residues mod `modulus`, by direct
// coefficient recursion; prec in t.
QSeries oracle_mod_partitions(int modulus, const std::vector<int>& excluded, Exp prec);

// Frequency family matching the sum side of a catalog row:
// stanton_32 -> Z, stanton_42 -> Z', nonbinom_kursungoz -> Z-tilde'.
Family interpretation_family(const std::string& row);
Report check_interpretation(const std::string& row, int k, int r, int j, Exp prec);

struct ZTildeReport {
  Comparison gf;
  bool inclusions = false;
  bool shift_bijective = false;
  bool ok() const { return gf.equal && inclusions && shift_bijective; }
};

// (1+q) gf(Z~'_{j,r,k}) = gf(Z'_{j,r-1,k}) + q gf(Z'_{j,r+1,k}) with the
// inclusion chain and the shift f_1 -> f_1 - 1 from Z'_{j,r-1,k} minus Z~'_{j,r,k}
// onto Z~'_{j,r,k} minus Z'_{j,r+1,k} checked by enumeration; prec in t.
ZTildeReport check_ztilde_relation(int k, int r, int j, Exp prec);

}  // namespace qs
