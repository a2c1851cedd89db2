#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace isogeo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Ambient coordinates of a point in R^d.
using Point = Eigen::VectorXd;

/// A vector in T_x R^d, carried together with its base point x.
struct TangentVector {
  Point base;
  Vector vec;

  Eigen::Index dim() const { return vec.size(); }
};

/// Throws InputError if any entry is NaN or infinite.
void require_finite(const Vector& v, std::string_view what);

/// Throws DimensionError if v.size() != dim.
void require_dim(const Vector& v, Eigen::Index dim, std::string_view what);

}  // namespace isogeo
