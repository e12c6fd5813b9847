#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qent {

// Multiset of momentum labels K = {k1^r1, ..., ks^rs}: momenta strictly
// increasing, multiplicities >= 1.
class MomentumMultiset {
 public:
  struct Entry {
    long momentum = 0;
    int multiplicity = 1;
    bool operator==(const Entry&) const = default;
  };

  MomentumMultiset() = default;
  explicit MomentumMultiset(std::vector<Entry> entries);

  // Compact form "1^2,3" (momentum^multiplicity, comma-separated).
  static MomentumMultiset parse(const std::string& text);
  static MomentumMultiset single(long momentum, int multiplicity = 1);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  int particle_count() const;
  int multiplicity_of(long momentum) const;
  bool all_single() const;  // every multiplicity == 1

  // Momenta repeated per multiplicity, ascending.
  std::vector<long> expanded() const;

  std::string str() const;

  bool operator==(const MomentumMultiset&) const = default;
  bool operator<(const MomentumMultiset& other) const;

 private:
  std::vector<Entry> entries_;
};

// A three-way split of a parent multiset (block A, B, C content).
struct Splitting {
  MomentumMultiset part_a, part_b, part_c;
};

// All M with 0 <= mult_M(k) <= mult_K(k), in lexicographic order of the
// multiplicity vector over K's distinct momenta; count = prod(r_i + 1).
std::vector<MomentumMultiset> sub_multisets(const MomentumMultiset& k);

// K - M when M is contained in K, nullopt otherwise.
std::optional<MomentumMultiset> multiset_subtract(const MomentumMultiset& k,
                                                  const MomentumMultiset& m);

// Coefficient of the raw-power split basis vector in the multinomial
// expansion of prod_k (b_k^dag)^{r_k} / sqrt(r_k!):
// prod_k sqrt(r_k!) / (a_k! b_k! c_k!).
double bosonic_coefficient(const MomentumMultiset& k, const Splitting& split);

// Parity (+1/-1) of the permutation reordering the momentum-ascending,
// block-labeled operator string into canonical order: A-block operators
// first (ascending), then B, then C. All multiplicities must be 1.
int fermionic_sign(const MomentumMultiset& k, const Splitting& split);

// Merge two disjoint-or-not multisets by summing multiplicities.
MomentumMultiset multiset_union(const MomentumMultiset& a, const MomentumMultiset& b);

}  // namespace qent
