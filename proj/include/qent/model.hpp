#pragma once

#include <string>
#include <vector>

#include "qent/linalg.hpp"
#include "qent/multiset.hpp"

namespace qent {

enum class Statistics { classical, bosonic, fermionic };

Statistics parse_statistics(const std::string& text);  // classical | boson | fermion
std::string to_string(Statistics stats);

enum class Block { A, B, C };

// Ring of L sites split into A = [1, l1], C1 = [l1+1, l1+d],
// B = [l1+d+1, l1+d+l2], C2 = [l1+d+l2+1, L]; C = C1 u C2.
class Geometry {
 public:
  Geometry(long sites, long len_a, long gap, long len_b);

  // Ratio form; rejects non-integer site counts.
  static Geometry from_ratios(long sites, double x1, double x2, double y);

  long sites() const { return sites_; }
  long len_a() const { return len_a_; }
  long gap() const { return gap_; }
  long len_b() const { return len_b_; }

  double x1() const { return static_cast<double>(len_a_) / sites_; }
  double x2() const { return static_cast<double>(len_b_) / sites_; }
  double y() const { return static_cast<double>(gap_) / sites_; }

 private:
  long sites_, len_a_, gap_, len_b_;
};

// Restricted Fourier overlap of momentum k with a block:
// alpha_A(k) = l1/L for k = 0 (mod L), else
//   exp(-i pi k (l1+1)/L) sin(pi k l1 / L) / (L sin(pi k / L)),
// alpha_B with the block-B phase, alpha_C = delta_{k,0} - alpha_A - alpha_B.
// k is reduced mod L first.
Complex alpha(Block block, long k, const Geometry& g);

// Gram matrix of the block's non-orthonormal basis {b^dag_{block,K} |G>}:
// entry (K1, K2) vanishes unless particle counts match, otherwise it is the
// permanent (bosonic) or determinant (fermionic) of alpha_{block, k1 - k2}
// over rows k1 in K1, columns k2 in K2 (with multiplicity, ascending).
// The result is checked Hermitian and PSD.
Matrix gram_matrix(Block block, const std::vector<MomentumMultiset>& basis,
                   Statistics stats, const Geometry& g);

}  // namespace qent
