#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "hpst/dynamics.hpp"
#include "hpst/errors.hpp"
#include "hpst/hamiltonian.hpp"
#include "hpst/verify.hpp"
#include "support.hpp"

using namespace hpst;
using std::numbers::pi;

namespace {

Spectrum spectrum_of(const NodeLayout& l) { return diagonalize(build_D(coupling_matrix(l))); }

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("two-node evolution") {
    const auto s = spectrum_of(layout_chain2());
    for (double tau : {0.0, 0.3, 1.0, pi / 2, 2.5, 7.0}) {
      const auto st = evolve(s, 1, tau);
      CHECK(std::abs(st.probability(1) - std::pow(std::cos(tau / 2), 2)) < 1e-12);
      CHECK(std::abs(st.probability(2) - std::pow(std::sin(tau / 2), 2)) < 1e-12);
    }
    CHECK(evolve(s, 1, pi).probability(2) == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("initial state") {
    const auto s = spectrum_of(layout_parallelepiped(0.6, 1.1));
    for (std::size_t k0 = 1; k0 <= 8; ++k0) {
      const auto st = evolve(s, k0, 0.0);
      for (std::size_t m = 1; m <= 8; ++m) CHECK(std::abs(st.amplitude(m) - (m == k0 ? 1.0 : 0.0)) < 1e-14);
      CHECK(std::abs(density_element(st, k0, k0) - 1.0) < 1e-14);
    }
  }

  TEST_CASE("index validation") {
    const auto s = spectrum_of(layout_chain2());
    CHECK_THROWS_AS(evolve(s, 0, 1.0), DomainError);
    CHECK_THROWS_AS(evolve(s, 3, 1.0), DomainError);
    CHECK_THROWS_AS(evolve(s, 1, 1.0).probability(3), DomainError);
  }

  TEST_CASE("density elements") {
    const auto s = spectrum_of(layout_chain2());
    CHECK(std::abs(density_element(evolve(s, 1, pi / 2), 1, 2)) == doctest::Approx(0.5).epsilon(1e-14));
    std::mt19937_64 rng(1);
    for (int k = 0; k < 100; ++k) {
      const auto st = random_state(4, rng);
      for (std::size_t i = 1; i <= 4; ++i) {
        CHECK(std::abs(std::norm(st.amplitude(i)) - st.probability(i)) <= 1e-14);
        for (std::size_t j = 1; j <= 4; ++j)
          CHECK(std::abs(density_element(st, i, j) - std::conj(density_element(st, j, i))) < 1e-15);
      }
    }
  }

  TEST_CASE("fidelity") {
    CHECK(fidelity(Complex(1.0, 0.0)) == doctest::Approx(1.0));
    CHECK(fidelity(Complex(0.0, 0.0)) == doctest::Approx(0.5));
    CHECK(fidelity(std::polar(1.0, pi)) == doctest::Approx(1.0 / 3.0));
    std::mt19937_64 rng(4);
    for (int k = 0; k < 200; ++k) {
      const auto st = random_state(3, rng);
      for (std::size_t m = 1; m <= 3; ++m) {
        const double f = fidelity(st, m);
        CHECK(f >= 1.0 / 3.0 - 1e-12);
        CHECK(f <= 1.0 + 1e-12);
      }
    }
  }

  TEST_CASE("time grid") {
    const TimeGrid g(10.0, 0.01);
    CHECK(g.points() == 1001);
    CHECK(g.at(1000) == doctest::Approx(10.0));
    CHECK(TimeGrid(1.0, 0.3).points() == 4);
    CHECK_THROWS_AS(TimeGrid(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(TimeGrid(1.0, -0.1), DomainError);
    CHECK_THROWS_AS(TimeGrid(0.0, 0.1), DomainError);
    CHECK_THROWS_AS(TimeGrid(1e12, 1e-3), ResourceError);
  }

  TEST_CASE("evolve_grid") {
    const auto s = spectrum_of(layout_chain2());
    const auto states = evolve_grid(s, 1, 10.0, 0.01);
    REQUIRE(states.size() == 1001);
    for (const auto& st : states) {
      CHECK(normalization_error(st) <= 1e-10);
      CHECK(std::abs(st.probability(2) - std::pow(std::sin(st.tau / 2), 2)) <= 1e-12);
    }
  }

  TEST_CASE("unitarity over random geometries") {
    std::mt19937_64 rng(2);
    const std::size_t sizes[] = {2, 3, 4, 5, 8, 12};
    for (int k = 0; k < 1000; ++k) CHECK(normalization_error(random_state(sizes[k % 6], rng)) <= 1e-10);
  }

  TEST_CASE("transfer amplitudes are symmetric") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ut(0.0, 20.0);
    for (int k = 0; k < 20; ++k) {
      const auto s = spectrum_of(random_layout(5, rng));
      const double tau = ut(rng);
      for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t m = 1; m <= 5; ++m)
          CHECK(std::abs(evolve(s, n, tau).amplitude(m) - evolve(s, m, tau).amplitude(n)) < 1e-12);
    }
  }

  TEST_CASE("numeric and analytic spectra give the same probabilities") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ut(0.0, 30.0);
    for (double b : {1.0, 0.8, std::cbrt(2.0)}) {
      for (auto mode : {FieldMode::PerpendicularToPlane, FieldMode::AlongSideB}) {
        const auto c = coupling_matrix(layout_rectangle(b, mode));
        const auto num = diagonalize(build_D(c));
        const auto ana = analytic_rectangle_spectrum(c.at(1, 3), c.at(1, 4));
        for (int k = 0; k < 20; ++k) {
          const double tau = ut(rng);
          const auto p = evolve(num, 1, tau), q = evolve(ana, 1, tau);
          for (std::size_t m = 1; m <= 4; ++m) CHECK(std::abs(p.probability(m) - q.probability(m)) <= 1e-10);
        }
      }
    }
  }

  TEST_CASE("agrees with brute-force evolution in the full Hilbert space") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ut(0.0, 6.0);
    for (std::size_t n : {2, 3, 4}) {
      for (int k = 0; k < 5; ++k) {
        const auto layout = random_layout(n, rng);
        const auto c = coupling_matrix(layout);
        const auto d = build_D(c);
        const auto s = diagonalize(d);
        const double tau = ut(rng);
        const std::size_t k0 = 1 + static_cast<std::size_t>(k) % n;
        const auto st = evolve(s, k0, tau);
        const auto psi = testing::brute_force_evolve(c, k0, tau);
        // The dropped -gamma/2 shift of H_1 reappears as a global phase.
        const Complex shift = std::polar(1.0, d.gamma * tau / 2.0);
        double outside = 0.0;
        for (std::size_t x = 0; x < psi.size(); ++x)
          if (std::popcount(x) != 1) outside += std::norm(psi[x]);
        CHECK(outside < 1e-24);
        for (std::size_t m = 1; m <= n; ++m) {
          const Complex brute = testing::single_excitation(psi, m);
          CHECK(std::abs(std::norm(brute) - st.probability(m)) < 1e-10);
          CHECK(std::abs(brute - st.amplitude(m) * shift) < 1e-10);
        }
      }
    }
  }
}
