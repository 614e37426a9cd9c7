#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hpst {

using Complex = std::complex<double>;

// Row-major dense matrix. Small sizes only (N <= a few hundred).
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> data() const { return data_; }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
using CMatrix = DenseMatrix<Complex>;

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix conj(const CMatrix& a);
CMatrix adjoint(const CMatrix& a);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
bool is_symmetric(const Matrix& a, double tol = 0.0);

struct JacobiOptions {
  double tolerance = 1e-13;  // off-diagonal Frobenius norm, relative to ||A||_F
  int max_sweeps = 100;
};

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j pairs with values[j]
};

// Cyclic Jacobi rotations. Throws NumericalError when the sweep cap is hit.
SymmetricEigen jacobi_eigh(const Matrix& a, const JacobiOptions& options = {});

// Real symmetric 2n x 2n matrix [[Re, -Im], [Im, Re]] of a Hermitian n x n matrix.
// The map is an algebra homomorphism and every eigenvalue appears twice.
Matrix real_embedding(const CMatrix& a);
CMatrix from_real_embedding(const Matrix& a);

// Ascending eigenvalues of a Hermitian matrix via its real embedding.
std::vector<double> hermitian_eigenvalues(const CMatrix& a, const JacobiOptions& options = {});

}  // namespace hpst
