#pragma once

#include <vector>

#include "qent/measures.hpp"

namespace qent {

// Occupation basis of the n-particle sector on L sites, deterministic
// lexicographic order. Entries are 0/1 for fermions, 0..n for bosons.
struct FockBasis {
  long sites = 0;
  int particles = 0;
  Statistics stats = Statistics::bosonic;
  std::vector<std::vector<int>> states;

  static FockBasis build(long sites, int particles, Statistics stats);
  std::size_t size() const { return states.size(); }
};

// |K> built by repeated application of b^dag_k = (1/sqrt(L)) sum_j
// exp(2 pi i j k / L) a^dag_j on the vacuum, normalized. Fermionic a^dag_j
// carries the (-1)^{sum_{j'<j} n_j'} string sign.
struct FullState {
  FockBasis basis;
  Eigen::VectorXcd amplitudes;
};

FullState build_full_state(const MomentumMultiset& k, long sites, Statistics stats);

// rho_AB by exact partial trace over C in the site-occupation basis.
// Fermionic amplitudes are re-expressed in block order (A, B, C sites)
// before tracing, picking up (-1)^{n_B n_C1} per basis state.
OrthoDensity exact_rdm(const FullState& state, const Geometry& g);

// exact_rdm fed through the measures module (identity Grams).
MeasureSet oracle_measures(const MomentumMultiset& k, const Geometry& g,
                           Statistics stats);

// One pipeline-vs-oracle comparison.
struct OracleCheckCase {
  Statistics stats;
  MomentumMultiset k;
  long sites = 0;
  long len_a = 0, gap = 0, len_b = 0;
  MeasureSet pipeline;
  MeasureSet oracle;
  double max_error = 0.0;
  bool pass = false;
};

// The small verification grid: both statistics, K in {1}, {1,2}, {1,2,3}
// (+ {1^2}, {1^2,2} bosonic), L in {8, 9, 10}, five partitions per L
// including d = 0 and d > 0.
std::vector<OracleCheckCase> oracle_check_suite(double tolerance = 1e-8);

}  // namespace qent
