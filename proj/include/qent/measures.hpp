#pragma once

#include "qent/measure_set.hpp"
#include "qent/statebuilder.hpp"

namespace qent {

// rho_AB in an orthonormal product basis: S is (dim_a*dim_b) square,
// Hermitian, PSD up to clamp tolerance, trace 1.
struct OrthoDensity {
  Matrix s;
  int dim_a = 0;
  int dim_b = 0;
};

// S = sqrt(Lambda) R^dag P R sqrt(Lambda) with Q_A = R_A Lambda_A R_A^dag,
// Q_B = R_B Lambda_B R_B^dag, R = R_A x R_B, Lambda = Lambda_A x Lambda_B.
// Gram eigenvalues below kRankEps * lambda_max are kept as exact zeros
// (null directions carry no weight); below -kNegativeEigTol is an error.
OrthoDensity orthonormalize(const NonOrthoDensity& rho);

// S_R = -tr[UU^dag log UU^dag] with U the reorganized tensor of T = sqrt(S).
double reflected_entropy(const OrthoDensity& rho);

// I = H(S_A) + H(S_B) - H(S) with S_A, S_B the partial traces.
double mutual_information(const OrthoDensity& rho);

// E_N = log tr|S~| with S~ the partial transpose on the B indices.
double log_negativity(const OrthoDensity& rho);

MeasureSet compute_measures(const OrthoDensity& rho);

// One-particle closed forms (natural logs); x1 + x2 = 0 returns zeros.
MeasureSet classical_closed_forms(double x1, double x2);

// Mixed Kronecker product grouping A-factors and B-factors:
// S_{(i1 i2)(a1 a2), (j1 j2)(b1 b2)} = S1_{i1 a1, j1 b1} S2_{i2 a2, j2 b2}.
OrthoDensity tensor_product(const OrthoDensity& lhs, const OrthoDensity& rhs);

// Full pipeline for a quasiparticle state |K>.
MeasureSet measure_quasiparticle(const MomentumMultiset& k, const Geometry& g,
                                 Statistics stats);

// Species-wise tensor product of classical multinomial states; entry
// (k, r) contributes an r-particle species.
MeasureSet measure_classical_species(const MomentumMultiset& species, double x1,
                                     double x2);

// Dispatch on statistics; classical states use the geometry's ratios only.
MeasureSet evaluate_state(const MomentumMultiset& k, const Geometry& g,
                          Statistics stats);

}  // namespace qent
