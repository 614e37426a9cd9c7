#include "hpst/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hpst/errors.hpp"

namespace hpst {

SingleExcitationMatrix build_D(const CouplingMatrix& c) {
  const std::size_t n = c.size();
  const Matrix& d = c.matrix();
  SingleExcitationMatrix out{Matrix(n, n), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      out.m(i, j) = d(i, j);
      row += d(i, j);
      if (j > i) out.gamma += d(i, j);
    }
    out.m(i, i) = 2.0 * row;
  }
  return out;
}

Spectrum::Spectrum(std::vector<double> eigenvalues, Matrix eigenvectors)
    : values_(std::move(eigenvalues)), vectors_(std::move(eigenvectors)) {
  if (vectors_.rows() != values_.size() || vectors_.cols() != values_.size())
    throw DomainError("spectrum: eigenvector matrix does not match eigenvalue count");
}

double Spectrum::eigenvalue(std::size_t j) const {
  if (j < 1 || j > size()) throw DomainError("eigenvalue index out of range");
  return values_[j - 1];
}

double Spectrum::component(std::size_t i, std::size_t j) const {
  if (i < 1 || j < 1 || i > size() || j > size()) throw DomainError("eigenvector index out of range");
  return vectors_(i - 1, j - 1);
}

std::vector<double> Spectrum::eigenvector(std::size_t j) const {
  if (j < 1 || j > size()) throw DomainError("eigenvector index out of range");
  std::vector<double> u(size());
  for (std::size_t i = 0; i < size(); ++i) u[i] = vectors_(i, j - 1);
  return u;
}

Spectrum diagonalize(const SingleExcitationMatrix& d) {
  if (!is_symmetric(d.m)) throw DomainError("diagonalize: matrix is not symmetric");
  auto eig = jacobi_eigh(d.m);
  return Spectrum(std::move(eig.values), std::move(eig.vectors));
}

namespace {

Spectrum from_sign_rows(const std::vector<std::array<int, 8>>& signs, std::size_t n, std::vector<double> values) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix u(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u(i, j) = scale * signs[j][i];
  return Spectrum(std::move(values), std::move(u));
}

}  // namespace

Spectrum analytic_rectangle_spectrum(double d13, double d14) {
  const double g = 1.0 + d13 + d14;
  const std::vector<std::array<int, 8>> signs{
      {1, -1, 1, -1}, {1, 1, 1, 1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  return from_sign_rows(signs, 4,
                        {2 * g - 1 - d14 + d13, 2 * g + 1 + d14 + d13, 2 * g - 1 + d14 - d13,
                         2 * g + 1 - d14 - d13});
}

Spectrum analytic_parallelepiped_spectrum(const std::array<double, 7>& d) {
  const auto [d12, d13, d14, d15, d16, d17, d18] = d;
  const double g = d12 + d13 + d14 + d15 + d16 + d17 + d18;
  const std::vector<std::array<int, 8>> signs{
      {1, 1, 1, 1, 1, 1, 1, 1},     {1, 1, 1, 1, -1, -1, -1, -1}, {1, 1, -1, -1, 1, 1, -1, -1},
      {1, 1, -1, -1, -1, -1, 1, 1}, {1, -1, 1, -1, 1, -1, 1, -1}, {1, -1, 1, -1, -1, 1, -1, 1},
      {1, -1, -1, 1, 1, -1, -1, 1}, {1, -1, -1, 1, -1, 1, 1, -1}};
  return from_sign_rows(signs, 8,
                        {3 * g,
                         3 * g - 2 * (d15 + d16 + d17 + d18),
                         3 * g - 2 * (d13 + d14 + d17 + d18),
                         3 * g - 2 * (d13 + d14 + d15 + d16),
                         3 * g - 2 * (d12 + d14 + d16 + d18),
                         3 * g - 2 * (d12 + d14 + d15 + d17),
                         3 * g - 2 * (d12 + d13 + d16 + d17),
                         3 * g - 2 * (d12 + d13 + d15 + d18)});
}

std::vector<std::vector<double>> sign_basis(int s) {
  if (s < 1 || s > 10) throw DomainError("sign_basis: s must lie in [1, 10]");
  std::vector<std::vector<double>> basis{{1.0}};
  const double r = 1.0 / std::sqrt(2.0);
  for (int level = 0; level < s; ++level) {
    std::vector<std::vector<double>> next;
    next.reserve(2 * basis.size());
    for (int sign : {1, -1})
      for (const auto& v : basis) {
        std::vector<double> w(2 * v.size());
        for (std::size_t k = 0; k < v.size(); ++k) {
          w[k] = r * v[k];
          w[k + v.size()] = sign * r * v[k];
        }
        next.push_back(std::move(w));
      }
    basis = std::move(next);
  }
  return basis;
}

std::vector<SpectralProjector> spectral_projectors(const Spectrum& s, double tol) {
  const std::size_t n = s.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s.eigenvalues()[a] < s.eigenvalues()[b]; });

  const Matrix& u = s.eigenvectors();
  std::vector<SpectralProjector> out;
  for (std::size_t k = 0; k < n;) {
    const double lead = s.eigenvalues()[order[k]];
    std::size_t end = k;
    while (end < n && std::abs(s.eigenvalues()[order[end]] - lead) <= tol * std::max(1.0, std::abs(lead))) ++end;
    SpectralProjector p{0.0, end - k, Matrix(n, n)};
    for (std::size_t m = k; m < end; ++m) {
      const std::size_t j = order[m];
      p.eigenvalue += s.eigenvalues()[j];
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) p.projector(a, b) += u(a, j) * u(b, j);
    }
    p.eigenvalue /= static_cast<double>(p.multiplicity);
    out.push_back(std::move(p));
    k = end;
  }
  return out;
}

double eigen_residual(const Matrix& d, const Spectrum& s) {
  const std::size_t n = s.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double du = 0.0;
      for (std::size_t k = 0; k < n; ++k) du += d(i, k) * s.eigenvectors()(k, j);
      const double r = du - s.eigenvalues()[j] * s.eigenvectors()(i, j);
      r2 += r * r;
    }
    worst = std::max(worst, std::sqrt(r2));
  }
  return worst;
}

double orthonormality_error(const Spectrum& s) {
  const Matrix& u = s.eigenvectors();
  const Matrix gram = u.transposed() * u;
  return max_abs(gram - Matrix::identity(s.size()));
}

}  // namespace hpst
