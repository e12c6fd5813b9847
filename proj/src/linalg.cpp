#include "qent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace qent {

double entropy_term(double x) {
  if (x <= 0.0) return 0.0;
  return -x * std::log(x);
}

void check_hermitian(const Matrix& m, double tol, const char* label) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << label << " is not square: " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(msg.str());
  }
  double max_abs = 0.0;
  double worst = 0.0;
  Eigen::Index wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      max_abs = std::max(max_abs, std::abs(m(i, j)));
      const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
      if (dev > worst) {
        worst = dev;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > tol * std::max(max_abs, 1e-300)) {
    std::ostringstream msg;
    msg << label << " is not Hermitian: entry (" << wi << "," << wj
        << ") vs conj(" << wj << "," << wi << ") differ by " << worst
        << " (largest |entry| " << max_abs << ")";
    throw std::invalid_argument(msg.str());
  }
}

EigenSystem hermitian_eig(const Matrix& m) {
  check_hermitian(m);
  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  const Eigen::Index n = m.rows();
  // Eigen returns ascending order; re-sort descending, stably, so equal
  // eigenvalues (identity Grams in particular) keep their basis order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return solver.eigenvalues()(a) > solver.eigenvalues()(b);
  });
  EigenSystem out;
  out.spectrum.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.spectrum.values[static_cast<std::size_t>(j)] = solver.eigenvalues()(src);
    out.vectors.col(j) = solver.eigenvectors().col(src);
  }
  return out;
}

Matrix psd_sqrt(const Matrix& m) {
  const EigenSystem es = hermitian_eig(m);
  double lambda_max = 0.0;
  for (double v : es.spectrum.values) lambda_max = std::max(lambda_max, v);
  const double zero_cut = kRankEps * lambda_max;

  const Eigen::Index n = m.rows();
  RealVector roots(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double v = es.spectrum.values[static_cast<std::size_t>(j)];
    if (v < -kNegativeEigTol) {
      std::ostringstream msg;
      msg << "psd_sqrt: eigenvalue " << v << " below -" << kNegativeEigTol
          << " (matrix is not positive semidefinite)";
      throw std::runtime_error(msg.str());
    }
    roots(j) = v <= zero_cut ? 0.0 : std::sqrt(v);
  }
  Matrix t = es.vectors * roots.asDiagonal() * es.vectors.adjoint();
  return (t + Matrix(t.adjoint())) / 2.0;
}

Complex permanent(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("permanent: matrix must be square");
  }
  const int n = static_cast<int>(m.rows());
  if (n == 0) return Complex(1.0, 0.0);
  if (n > 24) {
    throw std::invalid_argument("permanent: dimension too large for exact 2^n evaluation");
  }

  // Ryser: per(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} a_ij.
  // Gray-code traversal updates the row sums by one column per step.
  std::vector<Complex> row_sum(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  Complex total(0.0, 0.0);
  std::uint64_t gray_prev = 0;
  int popcount = 0;
  const std::uint64_t limit = std::uint64_t(1) << n;
  for (std::uint64_t k = 1; k < limit; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const std::uint64_t diff = gray ^ gray_prev;
    int col = 0;
    while (!((diff >> col) & 1)) ++col;
    if (gray & diff) {
      for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] += m(i, col);
      ++popcount;
    } else {
      for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] -= m(i, col);
      --popcount;
    }
    gray_prev = gray;
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= row_sum[static_cast<std::size_t>(i)];
    total += (popcount & 1) ? -prod : prod;
  }
  return (n & 1) ? -total : total;
}

Complex determinant(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant: matrix must be square");
  }
  if (m.rows() == 0) return Complex(1.0, 0.0);
  return m.determinant();
}

double von_neumann_entropy(const Spectrum& s, double sum_tol) {
  double sum = 0.0;
  for (double v : s.values) {
    if (v < -kNegativeEigTol) {
      std::ostringstream msg;
      msg << "von_neumann_entropy: eigenvalue " << v << " below -"
          << kNegativeEigTol;
      throw std::runtime_error(msg.str());
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > sum_tol) {
    std::ostringstream msg;
    msg << "von_neumann_entropy: spectrum sums to " << sum
        << ", expected 1 (trace leakage upstream)";
    throw std::runtime_error(msg.str());
  }
  double h = 0.0;
  for (double v : s.values) h += entropy_term(v);
  return h;
}

double trace_norm_hermitian(const Matrix& m) {
  const EigenSystem es = hermitian_eig(m);
  double norm = 0.0;
  for (double v : es.spectrum.values) norm += std::abs(v);
  return norm;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RealVector kron(const RealVector& a, const RealVector& b) {
  RealVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

Tensor4 reshape2_to_4(const Matrix& m, int da, int db) {
  if (m.rows() != static_cast<Eigen::Index>(da) * db ||
      m.cols() != static_cast<Eigen::Index>(da) * db) {
    throw std::invalid_argument("reshape2_to_4: matrix is not (da*db) square");
  }
  Tensor4 t(da, db, da, db);
  for (int i = 0; i < da; ++i)
    for (int a = 0; a < db; ++a)
      for (int j = 0; j < da; ++j)
        for (int b = 0; b < db; ++b) t(i, a, j, b) = m(i * db + a, j * db + b);
  return t;
}

Matrix reshape4_to_2(const Tensor4& t) {
  Matrix m(static_cast<Eigen::Index>(t.d1) * t.d2,
           static_cast<Eigen::Index>(t.d3) * t.d4);
  for (int i = 0; i < t.d1; ++i)
    for (int a = 0; a < t.d2; ++a)
      for (int j = 0; j < t.d3; ++j)
        for (int b = 0; b < t.d4; ++b) m(i * t.d2 + a, j * t.d4 + b) = t(i, a, j, b);
  return m;
}

Matrix reorder_u(const Tensor4& t) {
  Matrix u(static_cast<Eigen::Index>(t.d1) * t.d3,
           static_cast<Eigen::Index>(t.d2) * t.d4);
  for (int i = 0; i < t.d1; ++i)
    for (int a = 0; a < t.d2; ++a)
      for (int j = 0; j < t.d3; ++j)
        for (int b = 0; b < t.d4; ++b) u(i * t.d3 + j, a * t.d4 + b) = t(i, a, j, b);
  return u;
}

}  // namespace qent
