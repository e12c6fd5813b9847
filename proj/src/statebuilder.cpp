#include "qent/statebuilder.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qent {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_physical_trace(const NonOrthoDensity& rho) {
  const Matrix q = kron(rho.q_a, rho.q_b);
  const Complex trace = (rho.p * q).trace();
  if (std::abs(trace - Complex(1.0, 0.0)) > 1e-10) {
    std::ostringstream msg;
    msg << "non-orthonormal density: physical trace " << trace.real()
        << (trace.imag() < 0 ? "" : "+") << trace.imag() << "i deviates from 1";
    throw std::runtime_error(msg.str());
  }
}

}  // namespace

NonOrthoDensity build_quasiparticle_density(const MomentumMultiset& k,
                                            const Geometry& g, Statistics stats) {
  if (stats == Statistics::classical) {
    throw std::invalid_argument(
        "build_quasiparticle_density: use build_classical_density for classical states");
  }
  if (stats == Statistics::fermionic && !k.all_single()) {
    throw std::invalid_argument("fermionic state " + k.str() +
                                " has a repeated momentum (Pauli exclusion)");
  }

  NonOrthoDensity rho;
  rho.basis_a = sub_multisets(k);
  rho.basis_b = rho.basis_a;
  rho.q_a = gram_matrix(Block::A, rho.basis_a, stats, g);
  rho.q_b = gram_matrix(Block::B, rho.basis_b, stats, g);
  const Matrix q_c = gram_matrix(Block::C, rho.basis_a, stats, g);

  std::map<MomentumMultiset, int> index;
  for (std::size_t i = 0; i < rho.basis_a.size(); ++i)
    index[rho.basis_a[i]] = static_cast<int>(i);

  const int da = rho.dim_a();
  const int db = rho.dim_b();

  // Coefficient and forced K_C index per admissible (K_A, K_B) pair.
  struct SplitInfo {
    double coeff = 0.0;
    int kc = -1;
  };
  std::vector<SplitInfo> splits(static_cast<std::size_t>(da) * db);
  for (int i = 0; i < da; ++i) {
    for (int a = 0; a < db; ++a) {
      const auto rest = multiset_subtract(k, rho.basis_a[static_cast<std::size_t>(i)]);
      if (!rest) continue;
      const auto part_c = multiset_subtract(*rest, rho.basis_b[static_cast<std::size_t>(a)]);
      if (!part_c) continue;
      Splitting split{rho.basis_a[static_cast<std::size_t>(i)],
                      rho.basis_b[static_cast<std::size_t>(a)], *part_c};
      SplitInfo info;
      info.coeff = stats == Statistics::bosonic
                       ? bosonic_coefficient(k, split)
                       : static_cast<double>(fermionic_sign(k, split));
      info.kc = index.at(*part_c);
      splits[static_cast<std::size_t>(i) * db + a] = info;
    }
  }

  rho.p = Matrix::Zero(da * db, da * db);
  for (int u = 0; u < da * db; ++u) {
    if (splits[static_cast<std::size_t>(u)].kc < 0) continue;
    for (int v = 0; v < da * db; ++v) {
      if (splits[static_cast<std::size_t>(v)].kc < 0) continue;
      // rows index the ket split, columns the bra split; the C overlap is
      // <phi_C(bra) | phi_C(ket)> = [Q_C]_{K_C', K_C}.
      rho.p(u, v) = splits[static_cast<std::size_t>(u)].coeff *
                    splits[static_cast<std::size_t>(v)].coeff *
                    q_c(splits[static_cast<std::size_t>(v)].kc,
                        splits[static_cast<std::size_t>(u)].kc);
    }
  }

  check_hermitian(rho.p, 1e-10, "P tensor");
  check_physical_trace(rho);
  return rho;
}

NonOrthoDensity build_classical_density(const ClassicalState& state) {
  const int r = state.particles;
  if (r < 0) throw std::invalid_argument("classical state: negative particle count");
  if (state.x1 < 0.0 || state.x2 < 0.0 || state.x1 + state.x2 > 1.0 + 1e-12) {
    throw std::invalid_argument(
        "classical state: x1, x2 must be non-negative with x1 + x2 <= 1");
  }
  const double x3 = std::max(0.0, 1.0 - state.x1 - state.x2);

  NonOrthoDensity rho;
  rho.basis_a.reserve(static_cast<std::size_t>(r) + 1);
  rho.basis_a.push_back(MomentumMultiset());
  for (int a = 1; a <= r; ++a) rho.basis_a.push_back(MomentumMultiset::single(1, a));
  rho.basis_b = rho.basis_a;

  const int dim = r + 1;
  auto weight = [&](int a, int b) -> double {
    const int c = r - a - b;
    if (c < 0) return 0.0;
    return factorial(r) / (factorial(a) * factorial(b) * factorial(c)) *
           std::pow(state.x1, a) * std::pow(state.x2, b) * std::pow(x3, c);
  };

  rho.p = Matrix::Zero(dim * dim, dim * dim);
  for (int a = 0; a <= r; ++a)
    for (int b = 0; b <= r; ++b)
      for (int a2 = 0; a2 <= r; ++a2)
        for (int b2 = 0; b2 <= r; ++b2) {
          if (a + b != a2 + b2) continue;  // C occupations must match
          rho.p(a * dim + b, a2 * dim + b2) = std::sqrt(weight(a, b) * weight(a2, b2));
        }
  rho.q_a = Matrix::Identity(dim, dim);
  rho.q_b = Matrix::Identity(dim, dim);

  check_physical_trace(rho);
  return rho;
}

MeasureSet compose_additive(const std::vector<MeasureSet>& parts) {
  double sr = 0.0, mi = 0.0, en = 0.0;
  for (const auto& part : parts) {
    sr += part.reflected_entropy;
    mi += part.mutual_information;
    en += part.log_negativity;
  }
  return make_measure_set(sr, mi, en);
}

}  // namespace qent
