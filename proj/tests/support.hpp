#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "hpst/geometry.hpp"

namespace testing {

using Complex = std::complex<double>;

// Full 2^N XXZ Hamiltonian sum_{i<j} d_ij (IxIx + IyIy - 2 IzIz), bit n of a
// basis index set when node n+1 is excited. Independent of the D-matrix path.
inline std::vector<std::vector<Complex>> full_hamiltonian(const hpst::CouplingMatrix& c) {
  const std::size_t n = c.size();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::vector<Complex>> h(dim, std::vector<Complex>(dim));
  for (std::size_t s = 0; s < dim; ++s)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = c.at(i + 1, j + 1);
        const bool bi = (s >> i) & 1u, bj = (s >> j) & 1u;
        const double zi = bi ? -0.5 : 0.5, zj = bj ? -0.5 : 0.5;
        h[s][s] += -2.0 * d * zi * zj;
        // IxIx + IyIy = (I+I- + I-I+) / 2 swaps one up and one down spin.
        if (bi != bj) h[s ^ ((std::size_t{1} << i) | (std::size_t{1} << j))][s] += 0.5 * d;
      }
  return h;
}

// exp(-i H tau) |k0> by a Taylor series over sub-steps with ||H|| h <= 1/4.
inline std::vector<Complex> brute_force_evolve(const hpst::CouplingMatrix& c, std::size_t k0, double tau) {
  const auto h = full_hamiltonian(c);
  const std::size_t dim = h.size();
  double norm = 0.0;
  for (const auto& row : h) {
    double r = 0.0;
    for (auto x : row) r += std::abs(x);
    norm = std::max(norm, r);
  }
  const auto steps = static_cast<std::size_t>(std::ceil(std::abs(tau) * norm * 4.0)) + 1;
  const double dt = tau / static_cast<double>(steps);

  std::vector<Complex> psi(dim);
  psi[std::size_t{1} << (k0 - 1)] = 1.0;
  for (std::size_t step = 0; step < steps; ++step) {
    std::vector<Complex> term = psi, next = psi;
    for (int k = 1; k <= 30; ++k) {
      std::vector<Complex> applied(dim);
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t q = 0; q < dim; ++q)
          if (h[r][q] != 0.0) applied[r] += h[r][q] * term[q];
      for (std::size_t r = 0; r < dim; ++r) {
        term[r] = applied[r] * Complex(0.0, -dt / k);
        next[r] += term[r];
      }
    }
    psi = next;
  }
  return psi;
}

// Amplitude on the single-excitation state |m> of a full-space vector.
inline Complex single_excitation(const std::vector<Complex>& psi, std::size_t m) {
  return psi[std::size_t{1} << (m - 1)];
}

}  // namespace testing
