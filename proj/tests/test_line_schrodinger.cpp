#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ovallab/constants.hpp"
#include "ovallab/schrodinger.hpp"
#include "oracles.hpp"

using namespace ovallab;

TEST_CASE("bound states against the exactly solvable well") {
  SUBCASE("one-state well") {
    auto levels = oracles::poschl_teller_levels(2.0);
    REQUIRE(levels.size() == 1);
    auto sp = bound_states(PotentialSpec::poschl_teller(2.0), 1, {20.0, 16001});
    CHECK(sp.eigenvalues[0] == doctest::Approx(levels[0]).epsilon(1e-6));
    CHECK(sp.negative_count == 1);
    // ground state nonnegative by convention
    CHECK(sp.eigenfunctions[0].values.minCoeff() > -1e-8);
  }
  SUBCASE("two-state well") {
    auto levels = oracles::poschl_teller_levels(6.0);
    REQUIRE(levels.size() == 2);
    auto sp = bound_states(PotentialSpec::poschl_teller(6.0), 2, {20.0, 32001});
    CHECK(std::abs(sp.eigenvalues[0] - levels[0]) < 1e-6);
    CHECK(std::abs(sp.eigenvalues[1] - levels[1]) < 1e-6);
    CHECK(sp.negative_count == 2);
  }
  SUBCASE("empty well binds nothing") {
    auto sp = bound_states(PotentialSpec::square_well(0.0, 1.0), 1, {20.0, 2001});
    CHECK(sp.negative_count == 0);
    CHECK(sp.eigenvalues[0] > 0.0);
  }
  SUBCASE("error shrinks at second order under h-refinement") {
    const double exact = oracles::poschl_teller_levels(2.0)[0];
    const double e1 =
        std::abs(bound_states(PotentialSpec::poschl_teller(2.0), 1, {20.0, 4001}).eigenvalues[0] -
                 exact);
    const double e2 =
        std::abs(bound_states(PotentialSpec::poschl_teller(2.0), 1, {20.0, 8001}).eigenvalues[0] -
                 exact);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
  }
  SUBCASE("wall check rejects a well that reaches the boundary") {
    CHECK_THROWS_AS(bound_states(PotentialSpec::gaussian(5.0, 20.0), 1, {20.0, 2001}), Error);
  }
  SUBCASE("grid preconditions") {
    CHECK_THROWS_AS(bound_states(PotentialSpec::poschl_teller(2.0), 1, {20.0, 4000}), Error);
    CHECK_THROWS_AS(bound_states(PotentialSpec::poschl_teller(2.0), 1, {20.0, 499}), Error);
  }
}

TEST_CASE("eigenvalue identity residual") {
  // the identity is stated for lambda > 0, the magnitude of the bound level
  auto sp = bound_states(PotentialSpec::poschl_teller(2.0), 1, {20.0, 16001});
  const PotentialSpec v = PotentialSpec::poschl_teller(2.0);

  SUBCASE("converged ground state") {
    CHECK(rayleigh_identity_check(sp.eigenfunctions[0], v, -sp.eigenvalues[0]) <= 1e-5);
  }
  SUBCASE("shifting the eigenvalue shifts the residual linearly") {
    const double base = rayleigh_identity_check(sp.eigenfunctions[0], v, -sp.eigenvalues[0]);
    CHECK(rayleigh_identity_check(sp.eigenfunctions[0], v, -sp.eigenvalues[0] + 0.1) ==
          doctest::Approx(0.1 + base).epsilon(1e-3));
  }
  SUBCASE("both members of the two-state well") {
    const PotentialSpec v6 = PotentialSpec::poschl_teller(6.0);
    auto sp6 = bound_states(v6, 2, {20.0, 32001});
    CHECK(rayleigh_identity_check(sp6.eigenfunctions[0], v6, -sp6.eigenvalues[0]) <= 1e-5);
    CHECK(rayleigh_identity_check(sp6.eigenfunctions[1], v6, -sp6.eigenvalues[1]) <= 1e-5);
  }
}

TEST_CASE("moment ratios") {
  SUBCASE("one state at gamma = 1") {
    const auto rep = lt_ratio(PotentialSpec::poschl_teller(2.0), 1.0, 1, {20.0, 16001});
    // lambda = 1, int (2 sech^2)^{3/2} = 2 sqrt(2) * (pi/2)
    const double expect = 1.0 / (std::sqrt(2.0) * M_PI);
    CHECK(rep.ratio == doctest::Approx(expect).epsilon(1e-4));
    CHECK(rep.margin > 0.0);
    CHECK(rep.reference_constant == doctest::Approx(keller_constant(1.0)));
  }
  SUBCASE("two states at gamma = 1") {
    const auto rep = lt_ratio(PotentialSpec::poschl_teller(6.0), 1.0, 2, {20.0, 32001});
    const double expect = 5.0 / (3.0 * std::sqrt(6.0) * M_PI);
    CHECK(rep.ratio == doctest::Approx(expect).epsilon(1e-4));
    CHECK(rep.ratio <= keller_constant(1.0));
  }
  SUBCASE("gamma = 3/2 saturates the sharp constant") {
    const auto rep = lt_ratio(PotentialSpec::poschl_teller(2.0), 1.5, 1, {20.0, 16001});
    CHECK(rep.ratio == doctest::Approx(3.0 / 16.0).epsilon(1e-4));
  }
  SUBCASE("single-state bound across gamma values") {
    for (double gamma : {0.7, 1.0, 1.3}) {
      for (const auto& v : {PotentialSpec::poschl_teller(2.0), PotentialSpec::gaussian(2.0, 1.5),
                            PotentialSpec::square_well(1.0, 1.0)}) {
        const auto rep = lt_ratio(v, gamma, 1, {20.0, 8001});
        CHECK(rep.ratio <= keller_constant(gamma) + 1e-6);
      }
    }
  }
  SUBCASE("two-state support statistic at gamma = 1") {
    for (const auto& v : {PotentialSpec::poschl_teller(6.0), PotentialSpec::gaussian(5.0, 1.0),
                          PotentialSpec::square_well(3.0, 2.0)}) {
      const auto rep = lt_ratio(v, 1.0, 2, {20.0, 8001});
      CHECK(rep.ratio <= keller_constant(1.0) + 1e-6);
    }
  }
  SUBCASE("asking for an unbound second state") {
    CHECK_THROWS_AS(lt_ratio(PotentialSpec::poschl_teller(2.0), 1.0, 2, {20.0, 4001}), Error);
  }
}

TEST_CASE("orthonormal pair extraction") {
  SUBCASE("two-state well: parity and orthogonality") {
    auto [u1, u2] = eigenfunction_pair(PotentialSpec::poschl_teller(6.0), {20.0, 8001});
    CHECK(std::abs(inner(u1, u2)) <= 1e-12);
    CHECK(inner(u1, u1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(inner(u2, u2) == doctest::Approx(1.0).epsilon(1e-10));
    const int n = u1.size();
    double even_defect = 0.0, odd_defect = 0.0;
    for (int j = 0; j < n; ++j) {
      even_defect = std::max(even_defect, std::abs(u1.values[j] - u1.values[n - 1 - j]));
      odd_defect = std::max(odd_defect, std::abs(u2.values[j] + u2.values[n - 1 - j]));
    }
    CHECK(even_defect < 1e-8);
    CHECK(odd_defect < 1e-8);
  }
  SUBCASE("gaussian well binds exactly two") {
    auto sp = bound_states(PotentialSpec::gaussian(5.0, 1.0), 3, {20.0, 8001});
    CHECK(sp.negative_count == 2);
    auto [u1, u2] = eigenfunction_pair(PotentialSpec::gaussian(5.0, 1.0), {20.0, 8001});
    CHECK(std::abs(inner(u1, u2)) <= 1e-10);
  }
  SUBCASE("single-state well refuses") {
    CHECK_THROWS_AS(eigenfunction_pair(PotentialSpec::poschl_teller(2.0), {20.0, 4001}), Error);
  }
}

TEST_CASE("pointwise splitting inequality at random weights") {
  const PotentialSpec v = PotentialSpec::poschl_teller(6.0);
  auto sp = bound_states(v, 2, {20.0, 2001});
  const auto& u1 = sp.eigenfunctions[0];
  const auto& u2 = sp.eigenfunctions[1];
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ks(0.01, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double K = ks(rng);
    for (int j = 0; j < u1.size(); ++j) {
      const double x = u1.grid.node(j);
      const double vv = v(x);
      const double single = u1.values[j] * u1.values[j];
      const double paird = single + u2.values[j] * u2.values[j];
      CHECK(vv * single <=
            K * std::pow(vv, 1.5) + 4.0 / (27.0 * K * K) * std::pow(single, 3) + 1e-12);
      CHECK(vv * paird <=
            K * std::pow(vv, 1.5) + 4.0 / (27.0 * K * K) * std::pow(paird, 3) + 1e-12);
    }
  }
}

TEST_CASE("potential mini-language") {
  CHECK(parse_potential("poschl_teller:a=6")(0.0) == doctest::Approx(6.0));
  const auto g = parse_potential("gaussian:depth=5,width=1");
  CHECK(g(0.0) == doctest::Approx(5.0));
  CHECK(g(1.0) == doctest::Approx(5.0 * std::exp(-1.0)));
  const auto w = parse_potential("square_well:depth=3,half_width=2");
  CHECK(w(1.9) == doctest::Approx(3.0));
  CHECK(w(2.1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(parse_potential("morse:a=1"), Error);
  CHECK_THROWS_AS(parse_potential("gaussian:depth=5,sigma=1"), Error);
}
