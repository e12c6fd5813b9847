#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// A negative eigenvalue below this signals an upstream bug, not rounding noise.
constexpr double kNegativeEigTol = 1e-10;
// Eigenvalues below kRankEps * lambda_max are treated as exact zeros.
constexpr double kRankEps = 1e-12;
// Relative Hermiticity tolerance.
constexpr double kHermitianTol = 1e-12;

// Eigenvalues sorted descending.
struct Spectrum {
  std::vector<double> values;
};

struct EigenSystem {
  Spectrum spectrum;  // descending
  Matrix vectors;     // unitary; column j pairs with spectrum.values[j]
};

// h(x) = -x log x with the 0 log 0 = 0 convention (natural log).
double entropy_term(double x);

// Throws std::invalid_argument naming the worst entry pair when m deviates
// from Hermiticity by more than tol relative to its largest absolute entry.
void check_hermitian(const Matrix& m, double tol = kHermitianTol,
                     const char* label = "matrix");

// Q = R diag(lambda) R^dag with descending eigenvalues.
EigenSystem hermitian_eig(const Matrix& m);

// Square root of a PSD Hermitian matrix. Eigenvalues in [-kNegativeEigTol,
// kRankEps * lambda_max] become exact zeros; anything below -kNegativeEigTol
// throws std::runtime_error reporting the offending eigenvalue.
Matrix psd_sqrt(const Matrix& m);

// Exact permanent via Ryser inclusion-exclusion with Gray-code updates,
// O(2^n n). Empty matrix -> 1.
Complex permanent(const Matrix& m);

// Determinant; empty matrix -> 1.
Complex determinant(const Matrix& m);

// -sum h(lambda) over a spectrum that must sum to 1 within sum_tol.
// Negative values above -kNegativeEigTol are clamped to zero.
double von_neumann_entropy(const Spectrum& s, double sum_tol = 1e-8);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm_hermitian(const Matrix& m);

// Kronecker product with the (i, a) -> i * cols_b + a linearization; the same
// pairing convention is used for every reshape in the pipeline.
Matrix kron(const Matrix& a, const Matrix& b);
RealVector kron(const RealVector& a, const RealVector& b);

// Rank-4 tensor indexed (i, a, j, b), linearized row-major.
struct Tensor4 {
  int d1 = 0, d2 = 0, d3 = 0, d4 = 0;
  std::vector<Complex> data;

  Tensor4() = default;
  Tensor4(int n1, int n2, int n3, int n4)
      : d1(n1), d2(n2), d3(n3), d4(n4),
        data(static_cast<std::size_t>(n1) * n2 * n3 * n4) {}

  Complex& operator()(int i, int a, int j, int b) {
    return data[((static_cast<std::size_t>(i) * d2 + a) * d3 + j) * d4 + b];
  }
  Complex operator()(int i, int a, int j, int b) const {
    return data[((static_cast<std::size_t>(i) * d2 + a) * d3 + j) * d4 + b];
  }
};

// M_{ia,jb} <-> T_{i,a,j,b} under the fixed linearization.
Tensor4 reshape2_to_4(const Matrix& m, int da, int db);
Matrix reshape4_to_2(const Tensor4& t);

// U_{ij,ab} = T_{i,a,j,b}: the (da*da) x (db*db) reflected-entropy reorganization.
Matrix reorder_u(const Tensor4& t);

}  // namespace qent
