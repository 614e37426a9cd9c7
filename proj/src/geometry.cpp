#include "hpst/geometry.hpp"

#include <cmath>
#include <string>

#include "hpst/errors.hpp"

namespace hpst {

namespace {

constexpr double kLayoutTolerance = 1e-12;

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 difference(const Vec3& a, const Vec3& b) { return {b[0] - a[0], b[1] - a[1], b[2] - a[2]}; }

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

NodeLayout::NodeLayout(std::vector<Vec3> positions, Vec3 field_axis)
    : positions_(std::move(positions)), field_axis_(field_axis) {
  if (positions_.size() < 2) throw DomainError("layout needs at least two nodes");
  if (std::abs(norm(field_axis_) - 1.0) > kLayoutTolerance) throw DomainError("field axis must be a unit vector");
  for (std::size_t i = 0; i < positions_.size(); ++i)
    for (std::size_t j = i + 1; j < positions_.size(); ++j)
      if (norm(difference(positions_[i], positions_[j])) <= kLayoutTolerance)
        throw SingularityError("nodes " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
  if (std::abs(norm(difference(positions_[0], positions_[1])) - 1.0) > kLayoutTolerance)
    throw DomainError("distance between nodes 1 and 2 must be 1");
}

const Vec3& NodeLayout::position(std::size_t node) const {
  if (node < 1 || node > positions_.size()) throw DomainError("node index out of range");
  return positions_[node - 1];
}

CouplingMatrix::CouplingMatrix(Matrix d) : d_(std::move(d)) {
  if (d_.rows() != d_.cols()) throw DomainError("coupling matrix must be square");
  if (!is_symmetric(d_)) throw DomainError("coupling matrix must be symmetric");
  for (std::size_t i = 0; i < d_.rows(); ++i)
    if (d_(i, i) != 0.0) throw DomainError("coupling matrix must have a zero diagonal");
}

double CouplingMatrix::at(std::size_t i, std::size_t j) const {
  if (i < 1 || j < 1 || i > size() || j > size()) throw DomainError("node index out of range");
  return d_(i - 1, j - 1);
}

double delta_to_b(double delta) {
  require_positive(delta, "delta");
  return std::cbrt(1.0 / delta);
}

double b_to_delta(double b) {
  require_positive(b, "b");
  return 1.0 / (b * b * b);
}

NodeLayout layout_chain2() { return NodeLayout({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}, {0.0, 0.0, 1.0}); }

NodeLayout layout_rectangle(double b, FieldMode mode) {
  require_positive(b, "b");
  const Vec3 field = mode == FieldMode::PerpendicularToPlane ? Vec3{0.0, 0.0, 1.0} : Vec3{0.0, 1.0, 0.0};
  return NodeLayout({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {1.0, b, 0.0}, {0.0, b, 0.0}}, field);
}

NodeLayout layout_parallelepiped(double b1, double b2) {
  require_positive(b1, "b1");
  require_positive(b2, "b2");
  const std::vector<Vec3> base{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {1.0, b1, 0.0}, {0.0, b1, 0.0}};
  std::vector<Vec3> nodes = base;
  for (const auto& p : base) nodes.push_back({p[0], p[1], p[2] + b2});
  return NodeLayout(std::move(nodes), {0.0, 0.0, 1.0});
}

CouplingMatrix coupling_matrix(const NodeLayout& layout) {
  const std::size_t n = layout.size();
  const Vec3& h = layout.field_axis();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 r = difference(layout.positions()[i], layout.positions()[j]);
      const double xi = norm(r);
      const double cos_theta = (r[0] * h[0] + r[1] * h[1] + r[2] * h[2]) / xi;
      const double value = (1.0 - 3.0 * cos_theta * cos_theta) / (xi * xi * xi);
      d(i, j) = value;
      d(j, i) = value;
    }
  return CouplingMatrix(std::move(d));
}

}  // namespace hpst
