#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hpst/errors.hpp"
#include "hpst/hamiltonian.hpp"

using namespace hpst;

namespace {

std::array<double, 7> box_couplings(const CouplingMatrix& c) {
  std::array<double, 7> d{};
  for (std::size_t k = 0; k < 7; ++k) d[k] = c.at(1, k + 2);
  return d;
}

// M = [[X, Y], [Y, X]] at every level of halving.
bool nested_block_symmetric(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t n) {
  if (n == 1) return true;
  const std::size_t h = n / 2;
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      if (std::abs(m(r0 + i, c0 + j) - m(r0 + h + i, c0 + h + j)) > 1e-14) return false;
      if (std::abs(m(r0 + i, c0 + h + j) - m(r0 + h + i, c0 + j)) > 1e-14) return false;
    }
  return nested_block_symmetric(m, r0, c0, h) && nested_block_symmetric(m, r0, c0 + h, h);
}

double max_projector_gap(const Spectrum& a, const Spectrum& b) {
  const auto pa = spectral_projectors(a), pb = spectral_projectors(b);
  REQUIRE(pa.size() == pb.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    REQUIRE(pa[k].multiplicity == pb[k].multiplicity);
    worst = std::max(worst, std::abs(pa[k].eigenvalue - pb[k].eigenvalue));
    worst = std::max(worst, max_abs(pa[k].projector - pb[k].projector));
  }
  return worst;
}

bool matches_up_to_sign(const std::vector<std::vector<double>>& basis, const std::vector<double>& v) {
  return std::any_of(basis.begin(), basis.end(), [&](const std::vector<double>& w) {
    double dot = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) dot += v[k] * w[k];
    return std::abs(std::abs(dot) - 1.0) < 1e-14;
  });
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("hamiltonian") {
  TEST_CASE("two-node D") {
    const auto d = build_D(coupling_matrix(layout_chain2()));
    CHECK(d.m(0, 0) == 2.0);
    CHECK(d.m(1, 1) == 2.0);
    CHECK(d.m(0, 1) == 1.0);
    CHECK(d.gamma == 1.0);
    const auto s = diagonalize(d);
    CHECK(s.eigenvalue(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.eigenvalue(2) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(s.component(1, 1) + s.component(2, 1)) < 1e-14);
    CHECK(std::abs(s.component(1, 2) - s.component(2, 2)) < 1e-14);
  }

  TEST_CASE("D entries follow the couplings") {
    const auto c = coupling_matrix(layout_parallelepiped(0.8, 1.7));
    const auto d = build_D(c);
    double gamma = 0.0;
    for (std::size_t n = 1; n <= 8; ++n) {
      double row = 0.0;
      for (std::size_t i = 1; i <= 8; ++i)
        if (i != n) {
          row += c.at(i, n);
          CHECK(d.m(n - 1, i - 1) == c.at(n, i));
          if (i > n) gamma += c.at(n, i);
        }
      CHECK(d.m(n - 1, n - 1) == doctest::Approx(2.0 * row).epsilon(1e-15));
    }
    CHECK(d.gamma == doctest::Approx(gamma).epsilon(1e-15));
  }

  TEST_CASE("rectangle D has a constant diagonal") {
    const auto c = coupling_matrix(layout_rectangle(0.7, FieldMode::AlongSideB));
    const auto d = build_D(c);
    const double g = 1.0 + c.at(1, 3) + c.at(1, 4);
    for (std::size_t n = 0; n < 4; ++n) CHECK(d.m(n, n) == doctest::Approx(2.0 * g).epsilon(1e-14));
  }

  TEST_CASE("parallelepiped D has nested 2x2 block structure") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ub(0.3, 3.0);
    for (int k = 0; k < 20; ++k)
      CHECK(nested_block_symmetric(build_D(coupling_matrix(layout_parallelepiped(ub(rng), ub(rng)))).m, 0, 0, 8));
  }

  TEST_CASE("analytic rectangle spectrum") {
    const auto s = analytic_rectangle_spectrum(0.3, -1.7);
    const double g = 1.0 + 0.3 - 1.7;
    CHECK(s.eigenvalue(2) == doctest::Approx(2.0 * g + 1.0 - 1.7 + 0.3));
    for (std::size_t i = 1; i <= 4; ++i) {
      CHECK(s.component(i, 2) == 0.5);
      for (std::size_t j = 1; j <= 4; ++j) CHECK(std::abs(s.component(i, j)) == 0.5);
    }
    const auto free_pairs = analytic_rectangle_spectrum(0.0, 0.0);
    CHECK(free_pairs.eigenvalues() == std::vector<double>{1.0, 3.0, 1.0, 3.0});
    CHECK(orthonormality_error(s) < 1e-15);
  }

  TEST_CASE("analytic parallelepiped spectrum") {
    const auto c = coupling_matrix(layout_parallelepiped(0.9, 1.4));
    const auto d = box_couplings(c);
    const auto s = analytic_parallelepiped_spectrum(d);
    double g = 0.0;
    for (double x : d) g += x;
    CHECK(s.eigenvalue(1) == doctest::Approx(3.0 * g).epsilon(1e-14));
    const double mag = 1.0 / (2.0 * std::sqrt(2.0));
    for (std::size_t i = 1; i <= 8; ++i) {
      CHECK(s.component(i, 1) == doctest::Approx(mag).epsilon(1e-15));
      for (std::size_t j = 1; j <= 8; ++j) CHECK(std::abs(s.component(i, j)) == doctest::Approx(mag).epsilon(1e-15));
    }
    CHECK(orthonormality_error(s) < 1e-14);
    CHECK(eigen_residual(build_D(c).m, s) <= 1e-10 * frobenius_norm(build_D(c).m));
  }

  TEST_CASE("numeric spectra agree with the analytic ones") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> udelta(0.2, 40.0);
    for (int k = 0; k < 50; ++k) {
      const auto mode = k % 2 ? FieldMode::AlongSideB : FieldMode::PerpendicularToPlane;
      const auto rc = coupling_matrix(layout_rectangle(delta_to_b(udelta(rng)), mode));
      const auto rd = build_D(rc);
      const auto rnum = diagonalize(rd);
      const auto rana = analytic_rectangle_spectrum(rc.at(1, 3), rc.at(1, 4));
      const double rscale = std::max(1.0, max_abs(rd.m));
      const auto rv = sorted(rana.eigenvalues());
      for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(rv[j] - rnum.eigenvalues()[j]) <= 1e-10 * rscale);
      CHECK(max_projector_gap(rnum, rana) <= 1e-10 * rscale);

      const auto bc = coupling_matrix(layout_parallelepiped(delta_to_b(udelta(rng)), delta_to_b(udelta(rng))));
      const auto bd = build_D(bc);
      const auto bnum = diagonalize(bd);
      const auto bana = analytic_parallelepiped_spectrum(box_couplings(bc));
      const double bscale = std::max(1.0, max_abs(bd.m));
      const auto bv = sorted(bana.eigenvalues());
      for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(bv[j] - bnum.eigenvalues()[j]) <= 1e-10 * bscale);
      CHECK(max_projector_gap(bnum, bana) <= 1e-10 * bscale);
      CHECK(eigen_residual(bd.m, bnum) <= 1e-10 * frobenius_norm(bd.m));
      CHECK(orthonormality_error(bnum) <= 1e-10);
    }
  }

  TEST_CASE("degenerate geometries compare through projectors") {
    const auto cube = coupling_matrix(layout_parallelepiped(1.0, 1.0));
    const auto num = diagonalize(build_D(cube));
    const auto ana = analytic_parallelepiped_spectrum(box_couplings(cube));
    CHECK(spectral_projectors(num).size() < 8);
    CHECK(max_projector_gap(num, ana) <= 1e-10);

    const auto square = coupling_matrix(layout_rectangle(1.0, FieldMode::PerpendicularToPlane));
    CHECK(max_projector_gap(diagonalize(build_D(square)), analytic_rectangle_spectrum(square.at(1, 3), 1.0)) <= 1e-10);
  }

  TEST_CASE("eigenvectors do not depend on the geometry parameters") {
    const auto r0 = analytic_rectangle_spectrum(0.1, 0.2), r1 = analytic_rectangle_spectrum(-3.0, 5.0);
    CHECK(r0.eigenvectors() == r1.eigenvectors());
    std::array<double, 7> a{1, 0.2, 0.5, -2, 0.1, 0.05, 0.01}, b{1, 0.4, 3, -9, -0.3, 0.2, -0.1};
    CHECK(analytic_parallelepiped_spectrum(a).eigenvectors() == analytic_parallelepiped_spectrum(b).eigenvectors());
  }

  TEST_CASE("sign basis") {
    const auto b1 = sign_basis(1);
    REQUIRE(b1.size() == 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(matches_up_to_sign(b1, {r, r}));
    CHECK(matches_up_to_sign(b1, {r, -r}));

    const auto b2 = sign_basis(2);
    const auto rect = analytic_rectangle_spectrum(0.2, 0.4);
    for (std::size_t j = 1; j <= 4; ++j) CHECK(matches_up_to_sign(b2, rect.eigenvector(j)));

    const auto b3 = sign_basis(3);
    const auto box = analytic_parallelepiped_spectrum({1, 0.2, 0.5, -2, 0.1, 0.05, 0.01});
    for (std::size_t j = 1; j <= 8; ++j) CHECK(matches_up_to_sign(b3, box.eigenvector(j)));

    for (int s = 1; s <= 5; ++s) {
      const auto basis = sign_basis(s);
      CHECK(basis.size() == (std::size_t{1} << s));
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
          double dot = 0.0;
          for (std::size_t k = 0; k < basis.size(); ++k) dot += basis[i][k] * basis[j][k];
          CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-14);
        }
    }
    CHECK_THROWS_AS(sign_basis(0), DomainError);
    CHECK_THROWS_AS(sign_basis(11), DomainError);
  }

  TEST_CASE("diagonalize rejects asymmetric input") {
    SingleExcitationMatrix d{Matrix(2, 2), 0.0};
    d.m(0, 1) = 1.0;
    CHECK_THROWS_AS(diagonalize(d), DomainError);
  }
}
