#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qent/measures.hpp"
#include "qent/statebuilder.hpp"

using namespace qent;

namespace {

double max_measure_diff(const MeasureSet& a, const MeasureSet& b) {
  return std::max({std::abs(a.reflected_entropy - b.reflected_entropy),
                   std::abs(a.mutual_information - b.mutual_information),
                   std::abs(a.log_negativity - b.log_negativity)});
}

}  // namespace

TEST_CASE("classical one-particle density matches the closed matrix") {
  const double x1 = 0.25, x2 = 0.25;
  const auto rho = build_classical_density({1, x1, x2});
  REQUIRE(rho.dim_a() == 2);
  REQUIRE(rho.dim_b() == 2);
  // ordering (00, 01, 10, 11)
  CHECK(rho.p(0, 0).real() == doctest::Approx(1.0 - x1 - x2));
  CHECK(rho.p(1, 1).real() == doctest::Approx(x2));
  CHECK(rho.p(2, 2).real() == doctest::Approx(x1));
  CHECK(rho.p(1, 2).real() == doctest::Approx(std::sqrt(x1 * x2)));
  CHECK(rho.p(2, 1).real() == doctest::Approx(std::sqrt(x1 * x2)));
  CHECK(std::abs(rho.p(3, 3)) < 1e-15);
  CHECK((rho.q_a - Matrix::Identity(2, 2)).norm() < 1e-15);

  SUBCASE("certain particle in A is the pure |10><10|") {
    const auto pure = build_classical_density({1, 1.0, 0.0});
    CHECK(pure.p(2, 2).real() == doctest::Approx(1.0));
    CHECK(std::abs(pure.p(0, 0)) < 1e-15);
    CHECK(std::abs(pure.p(1, 1)) < 1e-15);
  }
}

TEST_CASE("quasiparticle densities") {
  const Geometry g(8, 2, 0, 2);

  SUBCASE("bosonic |k> orthonormalizes to the classical one-particle S") {
    const auto rho = build_quasiparticle_density(MomentumMultiset::parse("1"), g,
                                                 Statistics::bosonic);
    const auto ortho = orthonormalize(rho);
    const auto classical = orthonormalize(build_classical_density({1, 0.25, 0.25}));
    CHECK((ortho.s - classical.s).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("fermionic |k> gives the same S matrix") {
    const auto rho = build_quasiparticle_density(MomentumMultiset::parse("1"), g,
                                                 Statistics::fermionic);
    const auto ortho = orthonormalize(rho);
    const auto classical = orthonormalize(build_classical_density({1, 0.25, 0.25}));
    CHECK((ortho.s - classical.s).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("fermionic repeated momentum is rejected") {
    CHECK_THROWS_AS(build_quasiparticle_density(MomentumMultiset::parse("1^2"), g,
                                                Statistics::fermionic),
                    std::invalid_argument);
  }
  SUBCASE("classical statistics is routed elsewhere") {
    CHECK_THROWS_AS(build_quasiparticle_density(MomentumMultiset::parse("1"), g,
                                                Statistics::classical),
                    std::invalid_argument);
  }
  SUBCASE("P is Hermitian and has unit physical trace") {
    // construction would throw otherwise; exercise a few shapes
    for (const char* spec : {"1", "1,2", "1^2", "1^2,2"}) {
      CHECK_NOTHROW(build_quasiparticle_density(MomentumMultiset::parse(spec), g,
                                                Statistics::bosonic));
    }
    CHECK_NOTHROW(build_quasiparticle_density(MomentumMultiset::parse("1,2,3"), g,
                                              Statistics::fermionic));
  }
}

TEST_CASE("single-momentum states only see alpha_0") {
  // measures independent of the separation d and of k itself, exactly
  const MeasureSet ref = measure_quasiparticle(MomentumMultiset::parse("1^2"),
                                               Geometry(16, 4, 0, 4),
                                               Statistics::bosonic);
  for (long gap : {1L, 2L}) {
    const MeasureSet other = measure_quasiparticle(
        MomentumMultiset::parse("1^2"), Geometry(16, 4, gap, 4), Statistics::bosonic);
    CHECK(max_measure_diff(ref, other) < 1e-12);
  }
  for (long k : {3L, 7L}) {
    const MeasureSet other = measure_quasiparticle(
        MomentumMultiset::single(k, 2), Geometry(16, 4, 0, 4), Statistics::bosonic);
    CHECK(max_measure_diff(ref, other) < 1e-12);
  }
}

TEST_CASE("classical r = 1 measures are symmetric under x1 <-> x2") {
  const auto a = compute_measures(orthonormalize(build_classical_density({1, 0.125, 0.375})));
  const auto b = compute_measures(orthonormalize(build_classical_density({1, 0.375, 0.125})));
  CHECK(max_measure_diff(a, b) < 1e-12);
}

TEST_CASE("bosonic |k^2> equals the classical two-particle state") {
  const MeasureSet boson = measure_quasiparticle(MomentumMultiset::parse("1^2"),
                                                 Geometry(8, 2, 0, 2),
                                                 Statistics::bosonic);
  const MeasureSet classical =
      compute_measures(orthonormalize(build_classical_density({2, 0.25, 0.25})));
  CHECK(max_measure_diff(boson, classical) < 1e-8);
}

TEST_CASE("compose_additive") {
  const MeasureSet x = make_measure_set(0.8, 0.4, 0.2);
  const MeasureSet zero = make_measure_set(0.0, 0.0, 0.0);
  const MeasureSet same = compose_additive({x, zero});
  CHECK(same.reflected_entropy == doctest::Approx(0.8));
  CHECK(same.mutual_information == doctest::Approx(0.4));
  CHECK(same.log_negativity == doctest::Approx(0.2));
  CHECK(same.markov_gap == doctest::Approx(0.4));

  const MeasureSet triple = compose_additive({x, x, x});
  CHECK(triple.reflected_entropy == doctest::Approx(2.4));
  CHECK(triple.markov_gap == doctest::Approx(1.2));
}
