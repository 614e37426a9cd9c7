#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpst/dynamics.hpp"

namespace hpst {

// Two disjoint, nonempty node sets A and B (1-based). The remaining nodes
// form C, which may be empty. Indices are stored sorted.
class Bipartition {
 public:
  Bipartition(std::vector<std::size_t> a, std::vector<std::size_t> b);

  // "15_48" for single-digit nodes, "1,5_4,8" in general.
  static Bipartition parse(std::string_view text);

  const std::vector<std::size_t>& a() const { return a_; }
  const std::vector<std::size_t>& b() const { return b_; }

  // Throws DomainError if an index exceeds n.
  void validate(std::size_t n) const;
  // Column label, e.g. "15_48".
  std::string label() const;

 private:
  std::vector<std::size_t> a_;
  std::vector<std::size_t> b_;
};

// 1 - sum_{n in nodes} P_{k0 n}.
double sigma(const TransferState& state, std::span<const std::size_t> nodes);

// Wootters concurrence, closed form 2 sqrt(P_i P_j).
double concurrence(const TransferState& state, std::size_t i, std::size_t j);

// Wootters lambdas, descending: square roots of the eigenvalues of
// conj(rho~) rho for the explicitly built 4x4 reduced density matrix of
// nodes i, j in the basis |10>, |01>, |00>, |11>.
std::vector<double> wootters_lambdas(const TransferState& state, std::size_t i, std::size_t j);

// Squares of wootters_lambdas.
std::vector<double> wootters_eigenvalues(const TransferState& state, std::size_t i, std::size_t j);

// Wootters combination max(0, 2 l_max - sum l_n).
double concurrence_oracle(const TransferState& state, std::size_t i, std::size_t j);

// Closed-form double negativity for a single-excitation state:
// sqrt(sigma^2 + 4 S_A S_B) - sigma, sigma = 1 - S_A - S_B.
double negativity(const TransferState& state, const Bipartition& p);

// Same expression from the three sums; stable when S_A S_B << sigma^2.
double negativity_from_sums(double sigma, double sum_a, double sum_b);

// Eigenvalues (ascending) of the partial transpose over A of the reduced
// density matrix on A u B, restricted to the nonzero block spanned by
// |0>, |i_n>, |j_m>, |i_n j_m>.
std::vector<double> partial_transpose_eigenvalues(const TransferState& state, const Bipartition& p);

// Eigenvalues below this count as negative in the oracle.
inline constexpr double kNegativeEigenvalueFloor = -1e-12;
inline constexpr std::size_t kMaxOracleNodes = 12;

// 2 |sum of negative eigenvalues of partial_transpose_eigenvalues|.
double negativity_oracle(const TransferState& state, const Bipartition& p);

}  // namespace hpst
