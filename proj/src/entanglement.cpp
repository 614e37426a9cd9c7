#include "hpst/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "hpst/errors.hpp"

namespace hpst {

namespace {

void require_node(std::size_t node, std::size_t n) {
  if (node < 1 || node > n) throw DomainError("node index out of range");
}

std::vector<std::size_t> parse_nodes(std::string_view text) {
  std::vector<std::size_t> nodes;
  if (text.empty()) throw DomainError("empty node list in partition");
  const bool commas = text.find(',') != std::string_view::npos;
  std::size_t value = 0;
  bool have = false;
  for (char ch : text) {
    if (ch == ',') {
      if (!have) throw DomainError("malformed partition");
      nodes.push_back(value);
      value = 0;
      have = false;
    } else if (ch >= '0' && ch <= '9') {
      if (commas) {
        value = value * 10 + static_cast<std::size_t>(ch - '0');
        have = true;
      } else {
        nodes.push_back(static_cast<std::size_t>(ch - '0'));
      }
    } else {
      throw DomainError("unexpected character in partition");
    }
  }
  if (commas) {
    if (!have) throw DomainError("malformed partition");
    nodes.push_back(value);
  }
  return nodes;
}

std::string render(const std::vector<std::size_t>& nodes, bool compact) {
  std::string out;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!compact && k > 0) out += ',';
    out += std::to_string(nodes[k]);
  }
  return out;
}

// Hermitian square root of a positive semidefinite matrix, via its real
// embedding (negative rounding noise is clamped).
// Eigenvalues within roundoff of zero are taken as exact zeros; otherwise
// their square roots (~1e-8) would swamp the oracle's accuracy.
CMatrix psd_sqrt(const CMatrix& rho) {
  const auto eig = jacobi_eigh(real_embedding(rho));
  const std::size_t n = eig.values.size();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, eig.values.back());
  Matrix s(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] <= floor) continue;
    const double r = std::sqrt(eig.values[k]);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) s(a, b) += r * eig.vectors(a, k) * eig.vectors(b, k);
  }
  return from_real_embedding(s);
}

}  // namespace

Bipartition::Bipartition(std::vector<std::size_t> a, std::vector<std::size_t> b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty() || b_.empty()) throw DomainError("both parts of a bipartition must be nonempty");
  std::sort(a_.begin(), a_.end());
  std::sort(b_.begin(), b_.end());
  if (std::adjacent_find(a_.begin(), a_.end()) != a_.end() || std::adjacent_find(b_.begin(), b_.end()) != b_.end())
    throw DomainError("repeated node inside a bipartition part");
  for (auto x : a_) {
    if (x < 1) throw DomainError("node indices are 1-based");
    if (std::binary_search(b_.begin(), b_.end(), x)) throw DomainError("bipartition parts overlap");
  }
  for (auto x : b_)
    if (x < 1) throw DomainError("node indices are 1-based");
}

Bipartition Bipartition::parse(std::string_view text) {
  const auto cut = text.find('_');
  if (cut == std::string_view::npos || text.find('_', cut + 1) != std::string_view::npos)
    throw DomainError("partition must look like 15_48");
  return Bipartition(parse_nodes(text.substr(0, cut)), parse_nodes(text.substr(cut + 1)));
}

void Bipartition::validate(std::size_t n) const {
  if (a_.back() > n || b_.back() > n) throw DomainError("partition refers to a node beyond the system size");
}

std::string Bipartition::label() const {
  const bool compact = a_.back() < 10 && b_.back() < 10;
  return render(a_, compact) + "_" + render(b_, compact);
}

double sigma(const TransferState& state, std::span<const std::size_t> nodes) {
  std::set<std::size_t> unique(nodes.begin(), nodes.end());
  double s = 1.0;
  for (auto n : unique) s -= state.probability(n);
  return s;
}

double concurrence(const TransferState& state, std::size_t i, std::size_t j) {
  require_node(i, state.size());
  require_node(j, state.size());
  if (i == j) throw DomainError("concurrence needs two distinct nodes");
  return 2.0 * std::sqrt(state.probability(i) * state.probability(j));
}

std::vector<double> wootters_lambdas(const TransferState& state, std::size_t i, std::size_t j) {
  require_node(i, state.size());
  require_node(j, state.size());
  if (i == j) throw DomainError("concurrence needs two distinct nodes");

  double rest = 0.0;
  for (std::size_t n = 1; n <= state.size(); ++n)
    if (n != i && n != j) rest += state.probability(n);

  // Basis |10>, |01>, |00>, |11>; first bit is node i.
  CMatrix rho(4, 4);
  rho(0, 0) = density_element(state, i, i);
  rho(0, 1) = density_element(state, i, j);
  rho(1, 0) = density_element(state, j, i);
  rho(1, 1) = density_element(state, j, j);
  rho(2, 2) = rest;

  // sigma_y x sigma_y in the standard basis |00>,|01>,|10>,|11>, permuted to ours.
  const std::array<std::array<double, 4>, 4> yy_std{{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}}};
  const std::array<std::size_t, 4> to_std{2, 1, 0, 3};
  CMatrix yy(4, 4);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q) yy(p, q) = yy_std[to_std[p]][to_std[q]];

  // conj(rho~) rho is similar to N N^dagger with N = sqrt(rho) Y conj(sqrt(rho)),
  // so the Wootters lambdas are the singular values of N. They are read off
  // the Hermitian block [[0, N], [N^dagger, 0]] to avoid a second square root.
  const CMatrix root = psd_sqrt(rho);
  const CMatrix nm = root * yy * conj(root);
  const CMatrix na = adjoint(nm);
  CMatrix block(8, 8);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q) {
      block(p, q + 4) = nm(p, q);
      block(p + 4, q) = na(p, q);
    }
  auto values = hermitian_eigenvalues(block);
  std::sort(values.begin(), values.end(), std::greater<>());
  values.resize(4);
  for (auto& v : values) v = std::max(v, 0.0);
  return values;
}

std::vector<double> wootters_eigenvalues(const TransferState& state, std::size_t i, std::size_t j) {
  auto values = wootters_lambdas(state, i, j);
  for (auto& v : values) v *= v;
  return values;
}

double concurrence_oracle(const TransferState& state, std::size_t i, std::size_t j) {
  const auto values = wootters_lambdas(state, i, j);
  double total = 0.0;
  for (double v : values) total += v;
  return std::max(0.0, 2.0 * values.front() - total);
}

double negativity_from_sums(double sigma_value, double sum_a, double sum_b) {
  const double x = 4.0 * sum_a * sum_b;
  const double root = std::sqrt(sigma_value * sigma_value + x);
  if (sigma_value > 0.0) return x / (sigma_value + root);
  return root - sigma_value;
}

double negativity(const TransferState& state, const Bipartition& p) {
  p.validate(state.size());
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (auto n : p.a()) sum_a += state.probability(n);
  for (auto m : p.b()) sum_b += state.probability(m);
  return negativity_from_sums(1.0 - sum_a - sum_b, sum_a, sum_b);
}

std::vector<double> partial_transpose_eigenvalues(const TransferState& state, const Bipartition& p) {
  p.validate(state.size());
  const auto& a = p.a();
  const auto& b = p.b();
  if (a.size() + b.size() > kMaxOracleNodes) throw ResourceError("bipartition too large for the explicit oracle");

  const std::size_t m1 = a.size();
  const std::size_t m2 = b.size();
  std::vector<std::size_t> c;
  for (std::size_t n = 1; n <= state.size(); ++n)
    if (!std::binary_search(a.begin(), a.end(), n) && !std::binary_search(b.begin(), b.end(), n)) c.push_back(n);

  // Pattern (alpha, beta): alpha = 0 means no excitation in A, alpha = n means
  // node a[n-1] is excited; likewise beta for B. C configurations are
  // gamma = 0 or a single excited node c[gamma-1]; every other configuration
  // has zero amplitude in a single-excitation state.
  auto amplitude = [&](std::size_t alpha, std::size_t beta, std::size_t gamma) -> Complex {
    const int excited = (alpha > 0) + (beta > 0) + (gamma > 0);
    if (excited != 1) return {};
    if (alpha > 0) return state.amplitude(a[alpha - 1]);
    if (beta > 0) return state.amplitude(b[beta - 1]);
    return state.amplitude(c[gamma - 1]);
  };
  auto reduced = [&](std::size_t alpha, std::size_t beta, std::size_t alpha2, std::size_t beta2) {
    Complex sum{};
    for (std::size_t gamma = 0; gamma <= c.size(); ++gamma)
      sum += amplitude(alpha, beta, gamma) * std::conj(amplitude(alpha2, beta2, gamma));
    return sum;
  };

  const std::size_t k = (m1 + 1) * (m2 + 1);
  auto index = [&](std::size_t alpha, std::size_t beta) { return alpha * (m2 + 1) + beta; };
  CMatrix pt(k, k);
  for (std::size_t alpha = 0; alpha <= m1; ++alpha)
    for (std::size_t beta = 0; beta <= m2; ++beta)
      for (std::size_t alpha2 = 0; alpha2 <= m1; ++alpha2)
        for (std::size_t beta2 = 0; beta2 <= m2; ++beta2)
          // <alpha beta| rho^{T_A} |alpha2 beta2> = <alpha2 beta| rho |alpha beta2>
          pt(index(alpha, beta), index(alpha2, beta2)) = reduced(alpha2, beta, alpha, beta2);
  return hermitian_eigenvalues(pt);
}

double negativity_oracle(const TransferState& state, const Bipartition& p) {
  double negative = 0.0;
  for (double v : partial_transpose_eigenvalues(state, p))
    if (v < kNegativeEigenvalueFloor) negative += v;
  return 2.0 * std::abs(negative);
}

}  // namespace hpst
