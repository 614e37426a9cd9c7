#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hpst/geometry.hpp"
#include "hpst/linalg.hpp"

namespace hpst {

// Matrix D of the one-excitation block H_1 = (D - gamma I) / 2.
// Off-diagonal entries are d_ij, diagonal entries A_nn = 2 sum_{i != n} d_in.
struct SingleExcitationMatrix {
  Matrix m;
  // sum_{i<j} d_ij. Only shifts the energy, so dynamics ignores it.
  double gamma = 0.0;
};

SingleExcitationMatrix build_D(const CouplingMatrix& c);

// Eigenpairs of D. Column j of vectors() is u_j; component(i, j) is u_ij.
class Spectrum {
 public:
  Spectrum(std::vector<double> eigenvalues, Matrix eigenvectors);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& eigenvalues() const { return values_; }
  const Matrix& eigenvectors() const { return vectors_; }

  // 1-based.
  double eigenvalue(std::size_t j) const;
  double component(std::size_t i, std::size_t j) const;
  std::vector<double> eigenvector(std::size_t j) const;

 private:
  std::vector<double> values_;
  Matrix vectors_;
};

// Numerical diagonalization, eigenvalues ascending.
Spectrum diagonalize(const SingleExcitationMatrix& d);

// Closed-form eigenpairs of the rectangle D (d_12 = 1), in the order
// u1 = (1,-1,1,-1)/2, u2 = (1,1,1,1)/2, u3 = (1,-1,-1,1)/2, u4 = (1,1,-1,-1)/2.
Spectrum analytic_rectangle_spectrum(double d13, double d14);

// Closed-form eigenpairs of the parallelepiped D; d = {d12, d13, ..., d18}.
// Eigenvectors are the eight +-1/(2 sqrt 2) sign patterns.
Spectrum analytic_parallelepiped_spectrum(const std::array<double, 7>& d);

// Orthonormal basis of 2^s vectors whose components all have magnitude
// 2^(-s/2): B_2M = ((1,1) x B_M  U  (1,-1) x B_M) / sqrt 2, B_1 = {(1)}.
std::vector<std::vector<double>> sign_basis(int s);

struct SpectralProjector {
  double eigenvalue = 0.0;
  std::size_t multiplicity = 0;
  Matrix projector;
};

// Groups eigenvalues closer than tol (relative to max(1, |lambda|)) and
// returns the orthogonal projector onto each eigenspace, eigenvalues ascending.
std::vector<SpectralProjector> spectral_projectors(const Spectrum& s, double tol = 1e-8);

// max_j ||D u_j - lambda_j u_j||
double eigen_residual(const Matrix& d, const Spectrum& s);
// max |U^T U - I|
double orthonormality_error(const Spectrum& s);

}  // namespace hpst
