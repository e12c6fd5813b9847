#include "qent/oracle.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qent {

namespace {

constexpr double kPi = std::numbers::pi;

void enumerate(long sites_left, int particles_left, int cap_per_site,
               std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (sites_left == 0) {
    if (particles_left == 0) out.push_back(current);
    return;
  }
  const int cap = std::min(particles_left, cap_per_site);
  for (int occ = 0; occ <= cap; ++occ) {
    current.push_back(occ);
    enumerate(sites_left - 1, particles_left - occ, cap_per_site, current, out);
    current.pop_back();
  }
}

// Apply b^dag_k, mapping the n-particle sector to the (n+1)-particle sector.
Eigen::VectorXcd apply_raising(long k, const FockBasis& from,
                               const Eigen::VectorXcd& vec, const FockBasis& to) {
  std::map<std::vector<int>, int> to_index;
  for (std::size_t i = 0; i < to.states.size(); ++i)
    to_index[to.states[i]] = static_cast<int>(i);

  const long sites = from.sites;
  const double norm = 1.0 / std::sqrt(static_cast<double>(sites));
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(to.size()));
  for (std::size_t i = 0; i < from.states.size(); ++i) {
    const Complex amp = vec(static_cast<Eigen::Index>(i));
    if (amp == Complex(0.0, 0.0)) continue;
    const auto& occ = from.states[i];
    for (long j = 1; j <= sites; ++j) {
      const auto site = static_cast<std::size_t>(j - 1);
      const Complex phase =
          std::exp(Complex(0.0, 2.0 * kPi * static_cast<double>(j * k) /
                                    static_cast<double>(sites))) *
          norm;
      if (from.stats == Statistics::fermionic) {
        if (occ[site] == 1) continue;
        int string = 0;
        for (std::size_t p = 0; p < site; ++p) string += occ[p];
        std::vector<int> next = occ;
        next[site] = 1;
        const double sign = (string & 1) ? -1.0 : 1.0;
        out(to_index.at(next)) += amp * phase * sign;
      } else {
        std::vector<int> next = occ;
        next[site] += 1;
        out(to_index.at(next)) +=
            amp * phase * std::sqrt(static_cast<double>(occ[site] + 1));
      }
    }
  }
  return out;
}

}  // namespace

FockBasis FockBasis::build(long sites, int particles, Statistics stats) {
  if (stats == Statistics::classical) {
    throw std::invalid_argument("FockBasis: classical statistics has no Fock sector");
  }
  FockBasis basis;
  basis.sites = sites;
  basis.particles = particles;
  basis.stats = stats;
  std::vector<int> current;
  enumerate(sites, particles, stats == Statistics::fermionic ? 1 : particles,
            current, basis.states);
  return basis;
}

FullState build_full_state(const MomentumMultiset& k, long sites, Statistics stats) {
  if (stats == Statistics::fermionic && !k.all_single()) {
    throw std::invalid_argument("fermionic state " + k.str() +
                                " has a repeated momentum: b^dag_k^2 = 0");
  }
  FockBasis basis = FockBasis::build(sites, 0, stats);
  Eigen::VectorXcd vec = Eigen::VectorXcd::Ones(1);
  int filled = 0;
  double normalization = 1.0;
  for (const auto& entry : k.entries()) {
    for (int rep = 0; rep < entry.multiplicity; ++rep) {
      FockBasis next = FockBasis::build(sites, filled + 1, stats);
      vec = apply_raising(entry.momentum, basis, vec, next);
      basis = std::move(next);
      ++filled;
    }
    for (int i = 2; i <= entry.multiplicity; ++i) normalization *= i;
  }
  vec /= std::sqrt(normalization);

  const double norm = vec.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "build_full_state: |" << k.str() << "> has norm " << norm
        << " instead of 1";
    throw std::runtime_error(msg.str());
  }
  vec /= norm;
  return FullState{std::move(basis), std::move(vec)};
}

OrthoDensity exact_rdm(const FullState& state, const Geometry& g) {
  const long sites = g.sites();
  if (state.basis.sites != sites) {
    throw std::invalid_argument("exact_rdm: geometry and state disagree on L");
  }
  const long a_end = g.len_a();
  const long c1_end = g.len_a() + g.gap();
  const long b_end = c1_end + g.len_b();

  // Deterministic pattern indexing over restrictions to A, B, and C.
  std::map<std::vector<int>, int> a_index, b_index, c_index;
  struct Component {
    int a, b, c;
    Complex amp;
  };
  std::vector<Component> components;
  components.reserve(state.basis.size());

  for (std::size_t s = 0; s < state.basis.size(); ++s) {
    const auto& occ = state.basis.states[s];
    std::vector<int> in_a(occ.begin(), occ.begin() + a_end);
    std::vector<int> in_b(occ.begin() + c1_end, occ.begin() + b_end);
    std::vector<int> in_c(occ.begin() + a_end, occ.begin() + c1_end);
    in_c.insert(in_c.end(), occ.begin() + b_end, occ.end());

    double sign = 1.0;
    if (state.basis.stats == Statistics::fermionic) {
      int n_b = 0, n_c1 = 0;
      for (int v : in_b) n_b += v;
      for (long p = a_end; p < c1_end; ++p) n_c1 += occ[static_cast<std::size_t>(p)];
      if ((n_b * n_c1) & 1) sign = -1.0;
    }

    auto intern = [](std::map<std::vector<int>, int>& index,
                     const std::vector<int>& key) {
      auto [it, inserted] = index.try_emplace(key, static_cast<int>(index.size()));
      (void)inserted;
      return it->second;
    };
    components.push_back({intern(a_index, in_a), intern(b_index, in_b),
                          intern(c_index, in_c),
                          sign * state.amplitudes(static_cast<Eigen::Index>(s))});
  }

  // try_emplace assigned indices in first-seen order; remap to sorted-key order
  // so the basis ordering is independent of the state's amplitude pattern.
  auto sorted_remap = [](const std::map<std::vector<int>, int>& index) {
    std::vector<int> remap(index.size());
    int next = 0;
    for (const auto& [key, old] : index) remap[static_cast<std::size_t>(old)] = next++;
    return remap;
  };
  const auto remap_a = sorted_remap(a_index);
  const auto remap_b = sorted_remap(b_index);
  const auto remap_c = sorted_remap(c_index);

  const int da = static_cast<int>(a_index.size());
  const int db = static_cast<int>(b_index.size());
  const int dc = static_cast<int>(c_index.size());

  Matrix psi = Matrix::Zero(da * db, dc);
  for (const auto& comp : components) {
    psi(remap_a[static_cast<std::size_t>(comp.a)] * db +
            remap_b[static_cast<std::size_t>(comp.b)],
        remap_c[static_cast<std::size_t>(comp.c)]) += comp.amp;
  }

  Matrix rho = psi * psi.adjoint();
  rho = (rho + Matrix(rho.adjoint())) / 2.0;
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "exact_rdm: trace " << trace << " deviates from 1";
    throw std::runtime_error(msg.str());
  }
  return OrthoDensity{std::move(rho), da, db};
}

MeasureSet oracle_measures(const MomentumMultiset& k, const Geometry& g,
                           Statistics stats) {
  return compute_measures(exact_rdm(build_full_state(k, g.sites(), stats), g));
}

std::vector<OracleCheckCase> oracle_check_suite(double tolerance) {
  const std::vector<std::array<long, 3>> partitions = {
      {2, 0, 2}, {2, 1, 3}, {3, 2, 2}, {1, 0, 4}, {3, 1, 3}};
  std::vector<OracleCheckCase> cases;
  for (Statistics stats : {Statistics::bosonic, Statistics::fermionic}) {
    std::vector<MomentumMultiset> momenta = {
        MomentumMultiset::parse("1"), MomentumMultiset::parse("1,2"),
        MomentumMultiset::parse("1,2,3")};
    if (stats == Statistics::bosonic) {
      momenta.push_back(MomentumMultiset::parse("1^2"));
      momenta.push_back(MomentumMultiset::parse("1^2,2"));
    }
    for (const auto& k : momenta) {
      for (long sites : {8L, 9L, 10L}) {
        for (const auto& part : partitions) {
          OracleCheckCase c;
          c.stats = stats;
          c.k = k;
          c.sites = sites;
          c.len_a = part[0];
          c.gap = part[1];
          c.len_b = part[2];
          const Geometry g(sites, part[0], part[1], part[2]);
          c.pipeline = measure_quasiparticle(k, g, stats);
          c.oracle = oracle_measures(k, g, stats);
          c.max_error = std::max(
              {std::abs(c.pipeline.reflected_entropy - c.oracle.reflected_entropy),
               std::abs(c.pipeline.mutual_information - c.oracle.mutual_information),
               std::abs(c.pipeline.log_negativity - c.oracle.log_negativity)});
          c.pass = c.max_error <= tolerance;
          cases.push_back(std::move(c));
        }
      }
    }
  }
  return cases;
}

}  // namespace qent
