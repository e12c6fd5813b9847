#pragma once

#include <vector>

#include "qent/measure_set.hpp"
#include "qent/model.hpp"

namespace qent {

// Coefficient tensor P of rho_AB over labeled non-orthonormal product bases,
// together with the Gram matrices of those bases. P is stored flattened,
// (i, a) -> i * dim_b + a; it is Hermitian and the physical trace
// sum P_{ia,jb} [Q_A x Q_B]_{jb,ia} equals 1.
struct NonOrthoDensity {
  std::vector<MomentumMultiset> basis_a, basis_b;
  Matrix p;
  Matrix q_a, q_b;

  int dim_a() const { return static_cast<int>(basis_a.size()); }
  int dim_b() const { return static_cast<int>(basis_b.size()); }
};

// Expand |K> over splittings K_A u K_B u K_C = K and trace out C:
// P_{(K_A,K_B),(K_A',K_B')} = c c' [Q_C]_{K_C',K_C} with c the bosonic
// multinomial coefficient or the fermionic reordering sign.
NonOrthoDensity build_quasiparticle_density(const MomentumMultiset& k,
                                            const Geometry& g, Statistics stats);

// r classical particles, each in A with probability x1 and B with x2.
struct ClassicalState {
  int particles = 1;
  double x1 = 0.0;
  double x2 = 0.0;
};

// rho_AB of the multinomial r-particle state in the orthonormal occupation
// basis |a>_A |b>_B, a, b in 0..r; Gram matrices are identities.
NonOrthoDensity build_classical_density(const ClassicalState& state);

// Component-wise sum: the additivity prediction X_{K1 u K2} = X_{K1} + X_{K2}.
MeasureSet compose_additive(const std::vector<MeasureSet>& parts);

}  // namespace qent
