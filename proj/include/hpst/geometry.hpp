#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hpst/linalg.hpp"

namespace hpst {

using Vec3 = std::array<double, 3>;

enum class FieldMode { PerpendicularToPlane, AlongSideB };

// Node coordinates in units of r_12 plus the external field direction.
// Construction enforces: N >= 2, pairwise distinct nodes, |r_1 - r_2| = 1,
// |field_axis| = 1 (all within 1e-12).
class NodeLayout {
 public:
  NodeLayout(std::vector<Vec3> positions, Vec3 field_axis);

  std::size_t size() const { return positions_.size(); }
  const std::vector<Vec3>& positions() const { return positions_; }
  const Vec3& field_axis() const { return field_axis_; }
  // 1-based.
  const Vec3& position(std::size_t node) const;

 private:
  std::vector<Vec3> positions_;
  Vec3 field_axis_;
};

// Dimensionless dipolar couplings d_ij = (1 - 3 cos^2 theta_ij) / xi_ij^3.
class CouplingMatrix {
 public:
  explicit CouplingMatrix(Matrix d);

  std::size_t size() const { return d_.rows(); }
  // 1-based indices.
  double at(std::size_t i, std::size_t j) const;
  const Matrix& matrix() const { return d_; }

 private:
  Matrix d_;
};

double delta_to_b(double delta);
double b_to_delta(double b);

// Two nodes at unit distance, field perpendicular to the bond.
NodeLayout layout_chain2();

// Corners 1..4 of a rectangle in the x-y plane: 1 at the origin, 2 at (1,0,0),
// 3 at (1,b,0), 4 at (0,b,0). The field is along z (PerpendicularToPlane) or
// along the 1-4 side (AlongSideB).
NodeLayout layout_rectangle(double b, FieldMode mode);

// Base rectangle 1..4 with side 1-4 of length b1; nodes 5..8 are 1..4 shifted
// by b2 along z, which is also the field direction.
NodeLayout layout_parallelepiped(double b1, double b2);

CouplingMatrix coupling_matrix(const NodeLayout& layout);

}  // namespace hpst
