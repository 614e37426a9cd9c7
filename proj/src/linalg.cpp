#include "hpst/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hpst/errors.hpp"

namespace hpst {

namespace {

template <class T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product: shape mismatch");
  DenseMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

}  // namespace

Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }
CMatrix operator*(const CMatrix& a, const CMatrix& b) { return multiply(a, b); }

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix difference: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

CMatrix conj(const CMatrix& a) {
  CMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
  return c;
}

CMatrix adjoint(const CMatrix& a) { return conj(a).transposed(); }

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

SymmetricEigen jacobi_eigh(const Matrix& input, const JacobiOptions& options) {
  if (input.rows() != input.cols()) throw DomainError("jacobi_eigh: matrix is not square");
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);

  const double scale = frobenius_norm(a);
  const double threshold = options.tolerance * scale;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) s += a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  bool converged = scale == 0.0 || off_norm() <= threshold;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= threshold;
  }
  if (!converged) throw NumericalError("jacobi_eigh: no convergence within the sweep cap");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

Matrix real_embedding(const CMatrix& a) {
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  Matrix e(2 * r, 2 * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      e(i, j) = a(i, j).real();
      e(i, j + c) = -a(i, j).imag();
      e(i + r, j) = a(i, j).imag();
      e(i + r, j + c) = a(i, j).real();
    }
  return e;
}

CMatrix from_real_embedding(const Matrix& e) {
  if (e.rows() % 2 != 0 || e.cols() % 2 != 0) throw DomainError("from_real_embedding: odd dimension");
  const std::size_t r = e.rows() / 2;
  const std::size_t c = e.cols() / 2;
  CMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = {e(i, j), e(i + r, j)};
  return a;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& a, const JacobiOptions& options) {
  const auto doubled = jacobi_eigh(real_embedding(a), options).values;
  std::vector<double> values;
  values.reserve(a.rows());
  for (std::size_t k = 0; k < doubled.size(); k += 2) values.push_back(0.5 * (doubled[k] + doubled[k + 1]));
  return values;
}

}  // namespace hpst
