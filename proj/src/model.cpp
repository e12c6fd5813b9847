#include "qent/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qent {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPsdTol = 1e-10;  // relative PSD tolerance for Gram matrices
}  // namespace

Statistics parse_statistics(const std::string& text) {
  if (text == "classical") return Statistics::classical;
  if (text == "boson" || text == "bosonic") return Statistics::bosonic;
  if (text == "fermion" || text == "fermionic") return Statistics::fermionic;
  throw std::invalid_argument("unknown statistics \"" + text +
                              "\" (expected classical, boson, or fermion)");
}

std::string to_string(Statistics stats) {
  switch (stats) {
    case Statistics::classical: return "classical";
    case Statistics::bosonic: return "boson";
    case Statistics::fermionic: return "fermion";
  }
  return "?";
}

Geometry::Geometry(long sites, long len_a, long gap, long len_b)
    : sites_(sites), len_a_(len_a), gap_(gap), len_b_(len_b) {
  if (sites < 1) throw std::invalid_argument("geometry: L must be positive");
  if (len_a < 0 || gap < 0 || len_b < 0) {
    throw std::invalid_argument("geometry: block lengths must be non-negative");
  }
  if (len_a + gap + len_b > sites) {
    std::ostringstream msg;
    msg << "geometry: l1 + d + l2 = " << len_a + gap + len_b << " exceeds L = " << sites;
    throw std::invalid_argument(msg.str());
  }
}

Geometry Geometry::from_ratios(long sites, double x1, double x2, double y) {
  auto to_sites = [sites](double ratio, const char* name) -> long {
    const double raw = ratio * static_cast<double>(sites);
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 1e-6) {
      std::ostringstream msg;
      msg << "geometry: " << name << " = " << ratio << " gives non-integer site count "
          << raw << " at L = " << sites;
      throw std::invalid_argument(msg.str());
    }
    return static_cast<long>(rounded);
  };
  return Geometry(sites, to_sites(x1, "x1"), to_sites(y, "y"), to_sites(x2, "x2"));
}

Complex alpha(Block block, long k, const Geometry& g) {
  const long sites = g.sites();
  const long kr = ((k % sites) + sites) % sites;

  auto segment = [&](long len, double phase_sites) -> Complex {
    if (kr == 0) return Complex(static_cast<double>(len) / sites, 0.0);
    const double kd = static_cast<double>(kr);
    const double ls = static_cast<double>(sites);
    const Complex phase = std::exp(Complex(0.0, -kPi * kd * phase_sites / ls));
    return phase * (std::sin(kPi * kd * static_cast<double>(len) / ls) /
                    (ls * std::sin(kPi * kd / ls)));
  };

  switch (block) {
    case Block::A:
      return segment(g.len_a(), static_cast<double>(g.len_a() + 1));
    case Block::B:
      return segment(g.len_b(),
                     static_cast<double>(2 * g.len_a() + 2 * g.gap() + g.len_b() + 1));
    case Block::C: {
      const Complex delta = kr == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      return delta - alpha(Block::A, k, g) - alpha(Block::B, k, g);
    }
  }
  return Complex(0.0, 0.0);
}

Matrix gram_matrix(Block block, const std::vector<MomentumMultiset>& basis,
                   Statistics stats, const Geometry& g) {
  if (stats == Statistics::classical) {
    throw std::invalid_argument(
        "gram_matrix: classical states use an orthonormal basis, no Gram matrix");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix q = Matrix::Zero(n, n);
  std::vector<std::vector<long>> rows(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) rows[i] = basis[i].expanded();

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& k1 = rows[static_cast<std::size_t>(i)];
      const auto& k2 = rows[static_cast<std::size_t>(j)];
      if (k1.size() != k2.size()) continue;
      const auto p = static_cast<Eigen::Index>(k1.size());
      Matrix overlaps(p, p);
      for (Eigen::Index r = 0; r < p; ++r)
        for (Eigen::Index c = 0; c < p; ++c)
          overlaps(r, c) = alpha(block, k1[static_cast<std::size_t>(r)] -
                                            k2[static_cast<std::size_t>(c)], g);
      q(i, j) = stats == Statistics::bosonic ? permanent(overlaps)
                                             : determinant(overlaps);
    }
  }

  try {
    check_hermitian(q, 1e-10, "gram matrix");
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("gram_matrix: ") + e.what() +
                             " (alpha or ordering bug)");
  }
  const EigenSystem es = hermitian_eig(q);
  const double lambda_max = es.spectrum.values.empty() ? 0.0 : es.spectrum.values.front();
  const double lambda_min = es.spectrum.values.empty() ? 0.0 : es.spectrum.values.back();
  if (lambda_min < -kPsdTol * std::max(1.0, lambda_max)) {
    std::ostringstream msg;
    msg << "gram_matrix: eigenvalue " << lambda_min
        << " is negative beyond tolerance (alpha or ordering bug)";
    throw std::runtime_error(msg.str());
  }
  return q;
}

}  // namespace qent
