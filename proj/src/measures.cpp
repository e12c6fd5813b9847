#include "qent/measures.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qent {

namespace {

// Eigenvalues of a Hermitian matrix as a Spectrum, descending.
Spectrum spectrum_of(const Matrix& m) { return hermitian_eig(m).spectrum; }

void check_unit_trace(const Matrix& s, const char* label) {
  const Complex trace = s.trace();
  if (std::abs(trace - Complex(1.0, 0.0)) > 1e-10) {
    std::ostringstream msg;
    msg << label << ": trace " << trace.real() << " deviates from 1";
    throw std::runtime_error(msg.str());
  }
}

RealVector clamped_sqrt_eigs(const Matrix& q, const char* label) {
  const EigenSystem es = hermitian_eig(q);
  const double lambda_max =
      es.spectrum.values.empty() ? 0.0 : std::max(es.spectrum.values.front(), 0.0);
  const double zero_cut = kRankEps * lambda_max;
  RealVector roots(q.rows());
  for (Eigen::Index j = 0; j < q.rows(); ++j) {
    const double v = es.spectrum.values[static_cast<std::size_t>(j)];
    if (v < -kNegativeEigTol) {
      std::ostringstream msg;
      msg << label << ": Gram eigenvalue " << v << " below -" << kNegativeEigTol;
      throw std::runtime_error(msg.str());
    }
    roots(j) = v <= zero_cut ? 0.0 : std::sqrt(v);
  }
  return roots;
}

}  // namespace

MeasureSet make_measure_set(double reflected_entropy, double mutual_information,
                            double log_negativity) {
  if (reflected_entropy < mutual_information - 1e-9) {
    std::ostringstream msg;
    msg << "measure invariant violated: S_R = " << reflected_entropy
        << " < I = " << mutual_information << " - 1e-9";
    throw std::runtime_error(msg.str());
  }
  if (log_negativity < -1e-10) {
    std::ostringstream msg;
    msg << "measure invariant violated: E_N = " << log_negativity << " < -1e-10";
    throw std::runtime_error(msg.str());
  }
  return MeasureSet{reflected_entropy, mutual_information, log_negativity,
                    reflected_entropy - mutual_information};
}

OrthoDensity orthonormalize(const NonOrthoDensity& rho) {
  check_hermitian(rho.q_a, kHermitianTol, "Q_A");
  check_hermitian(rho.q_b, kHermitianTol, "Q_B");

  const EigenSystem ea = hermitian_eig(rho.q_a);
  const EigenSystem eb = hermitian_eig(rho.q_b);
  const RealVector roots_a = clamped_sqrt_eigs(rho.q_a, "orthonormalize(Q_A)");
  const RealVector roots_b = clamped_sqrt_eigs(rho.q_b, "orthonormalize(Q_B)");

  const Matrix r = kron(ea.vectors, eb.vectors);
  const RealVector sqrt_lambda = kron(roots_a, roots_b);

  Matrix s = sqrt_lambda.asDiagonal() * (r.adjoint() * rho.p * r) *
             sqrt_lambda.asDiagonal();
  s = (s + Matrix(s.adjoint())) / 2.0;
  check_unit_trace(s, "orthonormalize");
  return OrthoDensity{std::move(s), rho.dim_a(), rho.dim_b()};
}

double reflected_entropy(const OrthoDensity& rho) {
  const Matrix t = psd_sqrt(rho.s);
  const Matrix u = reorder_u(reshape2_to_4(t, rho.dim_a, rho.dim_b));
  Matrix purified = u * u.adjoint();
  purified = (purified + Matrix(purified.adjoint())) / 2.0;
  return von_neumann_entropy(spectrum_of(purified));
}

double mutual_information(const OrthoDensity& rho) {
  const int da = rho.dim_a;
  const int db = rho.dim_b;
  Matrix s_a = Matrix::Zero(da, da);
  Matrix s_b = Matrix::Zero(db, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int a = 0; a < db; ++a) s_a(i, j) += rho.s(i * db + a, j * db + a);
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b)
      for (int i = 0; i < da; ++i) s_b(a, b) += rho.s(i * db + a, i * db + b);
  return von_neumann_entropy(spectrum_of(s_a)) +
         von_neumann_entropy(spectrum_of(s_b)) -
         von_neumann_entropy(spectrum_of(rho.s));
}

double log_negativity(const OrthoDensity& rho) {
  const int da = rho.dim_a;
  const int db = rho.dim_b;
  Matrix swapped(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int a = 0; a < db; ++a)
      for (int j = 0; j < da; ++j)
        for (int b = 0; b < db; ++b)
          swapped(i * db + a, j * db + b) = rho.s(i * db + b, j * db + a);
  return std::log(trace_norm_hermitian(swapped));
}

MeasureSet compute_measures(const OrthoDensity& rho) {
  return make_measure_set(reflected_entropy(rho), mutual_information(rho),
                          log_negativity(rho));
}

MeasureSet classical_closed_forms(double x1, double x2) {
  if (x1 < 0.0 || x2 < 0.0 || x1 + x2 > 1.0 + 1e-12) {
    throw std::invalid_argument("classical_closed_forms: need x1, x2 >= 0, x1 + x2 <= 1");
  }
  const double sum = x1 + x2;
  if (sum == 0.0) return make_measure_set(0.0, 0.0, 0.0);

  const double prod = x1 * x2;
  const double disc = std::sqrt(std::max(0.0, sum * (sum - 4.0 * prod)));
  double sr = 2.0 * entropy_term(prod / sum);
  sr += entropy_term((sum - 2.0 * prod + disc) / (2.0 * sum));
  sr += entropy_term((sum - 2.0 * prod - disc) / (2.0 * sum));

  const double mi = entropy_term(x1) + entropy_term(1.0 - x1) + entropy_term(x2) +
                    entropy_term(1.0 - x2) - entropy_term(sum) -
                    entropy_term(1.0 - sum);

  const double en =
      std::log(sum + std::sqrt((1.0 - sum) * (1.0 - sum) + 4.0 * prod));

  return make_measure_set(sr, mi, en);
}

OrthoDensity tensor_product(const OrthoDensity& lhs, const OrthoDensity& rhs) {
  const int da = lhs.dim_a * rhs.dim_a;
  const int db = lhs.dim_b * rhs.dim_b;
  Matrix s(da * db, da * db);
  for (int i1 = 0; i1 < lhs.dim_a; ++i1)
    for (int i2 = 0; i2 < rhs.dim_a; ++i2)
      for (int a1 = 0; a1 < lhs.dim_b; ++a1)
        for (int a2 = 0; a2 < rhs.dim_b; ++a2) {
          const int row = (i1 * rhs.dim_a + i2) * db + (a1 * rhs.dim_b + a2);
          for (int j1 = 0; j1 < lhs.dim_a; ++j1)
            for (int j2 = 0; j2 < rhs.dim_a; ++j2)
              for (int b1 = 0; b1 < lhs.dim_b; ++b1)
                for (int b2 = 0; b2 < rhs.dim_b; ++b2) {
                  const int col = (j1 * rhs.dim_a + j2) * db + (b1 * rhs.dim_b + b2);
                  s(row, col) = lhs.s(i1 * lhs.dim_b + a1, j1 * lhs.dim_b + b1) *
                                rhs.s(i2 * rhs.dim_b + a2, j2 * rhs.dim_b + b2);
                }
        }
  return OrthoDensity{std::move(s), da, db};
}

MeasureSet measure_quasiparticle(const MomentumMultiset& k, const Geometry& g,
                                 Statistics stats) {
  return compute_measures(orthonormalize(build_quasiparticle_density(k, g, stats)));
}

MeasureSet measure_classical_species(const MomentumMultiset& species, double x1,
                                     double x2) {
  if (species.empty()) {
    throw std::invalid_argument("classical state needs at least one species");
  }
  bool first = true;
  OrthoDensity product;
  for (const auto& entry : species.entries()) {
    OrthoDensity factor = orthonormalize(
        build_classical_density({entry.multiplicity, x1, x2}));
    product = first ? std::move(factor) : tensor_product(product, factor);
    first = false;
  }
  return compute_measures(product);
}

MeasureSet evaluate_state(const MomentumMultiset& k, const Geometry& g,
                          Statistics stats) {
  if (stats == Statistics::classical) {
    return measure_classical_species(k, g.x1(), g.x2());
  }
  return measure_quasiparticle(k, g, stats);
}

}  // namespace qent
