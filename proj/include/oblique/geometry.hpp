#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>

#include "oblique/errors.hpp"

namespace oblique {

// Row-vector convention throughout: points are 1x3 rows multiplied on the
// left of matrices, p * M. Storage is row-major to match.
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3, Eigen::RowMajor>;

template <typename Scalar>
using RowVector3 = Eigen::Matrix<Scalar, 1, 3>;

using Matrix3d = Matrix3<double>;
using RowVector3d = RowVector3<double>;

/// Point in the surface function's own coordinate space, before mapping.
template <typename Scalar>
struct LogicalPoint {
  Scalar x{0};
  Scalar y{0};
  Scalar z{0};

  RowVector3<Scalar> row() const { return RowVector3<Scalar>(x, y, z); }

  static LogicalPoint from_row(const RowVector3<Scalar>& r) {
    return {r[0], r[1], r[2]};
  }
};

/// Screen-space point (sx, sy) with the depth coordinate retained.
/// Keeping z alongside the screen pair is what makes the mapping
/// invertible; (sx, sy) alone is the pixel position.
template <typename Scalar>
struct MappedPoint {
  Scalar sx{0};
  Scalar sy{0};
  Scalar z{0};

  RowVector3<Scalar> row() const { return RowVector3<Scalar>(sx, sy, z); }

  static MappedPoint from_row(const RowVector3<Scalar>& r) {
    return {r[0], r[1], r[2]};
  }
};

using LogicalPointd = LogicalPoint<double>;
using MappedPointd = MappedPoint<double>;

namespace detail {

template <typename Scalar>
void require_finite(Scalar value, const char* name) {
  if (!std::isfinite(value)) {
    throw NonFiniteCoordinate(name, static_cast<double>(value));
  }
}

}  // namespace detail

/// |det| at or below this is treated as singular by inverse_matrix().
inline constexpr double kSingularityTolerance = 1e-9;

/// theta must stay this far inside (0, pi/2); the map degenerates at the
/// boundary (sec(theta) blows up at pi/2, screen axes collide at 0).
inline constexpr double kThetaMargin = 1e-6;

/// Parameters of the oblique map: the depth axis is drawn at angle
/// `theta` to the horizontal, depth extent shrunk by `rho_z`, logical
/// units converted to pixels by `scale`, and the logical origin placed
/// at screen position (origin_x, origin_y). Screen y grows downward.
template <typename Scalar>
class Projection {
 public:
  Projection(Scalar theta, Scalar rho_z, Scalar origin_x, Scalar origin_y,
             Scalar scale = Scalar(1))
      : theta_(theta),
        rho_z_(rho_z),
        origin_x_(origin_x),
        origin_y_(origin_y),
        scale_(scale) {
    constexpr double half_pi = std::numbers::pi / 2;
    detail::require_finite(theta, "theta");
    detail::require_finite(rho_z, "rho_z");
    detail::require_finite(origin_x, "origin_x");
    detail::require_finite(origin_y, "origin_y");
    detail::require_finite(scale, "scale");
    if (!(static_cast<double>(theta) >= kThetaMargin &&
          static_cast<double>(theta) <= half_pi - kThetaMargin)) {
      throw InvalidArgument("theta must lie in [1e-6, pi/2 - 1e-6], got " +
                            std::to_string(static_cast<double>(theta)));
    }
    if (!(rho_z > Scalar(0) && rho_z <= Scalar(1))) {
      throw InvalidArgument("rho_z must lie in (0, 1], got " +
                            std::to_string(static_cast<double>(rho_z)));
    }
    if (!(scale > Scalar(0))) {
      throw InvalidArgument("scale must be positive, got " +
                            std::to_string(static_cast<double>(scale)));
    }
  }

  Scalar theta() const noexcept { return theta_; }
  Scalar rho_z() const noexcept { return rho_z_; }
  Scalar origin_x() const noexcept { return origin_x_; }
  Scalar origin_y() const noexcept { return origin_y_; }
  Scalar scale() const noexcept { return scale_; }

 private:
  Scalar theta_;
  Scalar rho_z_;
  Scalar origin_x_;
  Scalar origin_y_;
  Scalar scale_;
};

using Projectiond = Projection<double>;

/// Maps a logical point to the screen:
///   sx = x0 + y - x*sin(theta)
///   sy = y0 - rho_z*z + x*cos(theta)
/// with (x, y, z) scaled into pixel units first. The returned z is the
/// scaled depth, kept so inverse_map() can undo the projection.
template <typename Scalar>
MappedPoint<Scalar> forward_map(const LogicalPoint<Scalar>& p,
                                const Projection<Scalar>& proj) {
  detail::require_finite(p.x, "x");
  detail::require_finite(p.y, "y");
  detail::require_finite(p.z, "z");
  const Scalar x = proj.scale() * p.x;
  const Scalar y = proj.scale() * p.y;
  const Scalar z = proj.scale() * p.z;
  return {proj.origin_x() + y - x * std::sin(proj.theta()),
          proj.origin_y() - proj.rho_z() * z + x * std::cos(proj.theta()),
          z};
}

/// The invertible 3x3 lift of the oblique map, row-vector convention:
///   [x0 y0 0] + [x y z] * M = [sx sy z]
/// Rows: [-sin(theta), cos(theta), 0], [1, 0, 0], [0, -rho_z, 1].
template <typename Scalar>
Matrix3<Scalar> forward_matrix(const Projection<Scalar>& proj) {
  const Scalar s = std::sin(proj.theta());
  const Scalar c = std::cos(proj.theta());
  Matrix3<Scalar> m;
  m << -s, c, Scalar(0),
      Scalar(1), Scalar(0), Scalar(0),
      Scalar(0), -proj.rho_z(), Scalar(1);
  return m;
}

/// 3x3 determinant by cofactor expansion along the first row.
template <typename Scalar>
Scalar determinant(const Matrix3<Scalar>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Classical adjugate (transpose of the cofactor matrix), satisfying
/// m * adjugate(m) = det(m) * I.
template <typename Scalar>
Matrix3<Scalar> adjugate(const Matrix3<Scalar>& m) {
  Matrix3<Scalar> a;
  a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return a;
}

/// Inverse as adjugate over determinant. Throws SingularMatrix when
/// |det| <= kSingularityTolerance.
template <typename Scalar>
Matrix3<Scalar> inverse_matrix(const Matrix3<Scalar>& m) {
  const Scalar det = determinant(m);
  if (std::abs(static_cast<double>(det)) <= kSingularityTolerance) {
    throw SingularMatrix(static_cast<double>(det));
  }
  return adjugate(m) / det;
}

/// Exact inverse of forward_map():
///   x = (sy - y0 + rho_z*z) * sec(theta)
///   y = sx - x0 + (sy - y0 + rho_z*z) * tan(theta)
/// followed by dividing all three coordinates back by the scale.
template <typename Scalar>
LogicalPoint<Scalar> inverse_map(const MappedPoint<Scalar>& q,
                                 const Projection<Scalar>& proj) {
  detail::require_finite(q.sx, "sx");
  detail::require_finite(q.sy, "sy");
  detail::require_finite(q.z, "z");
  const Scalar lifted = q.sy - proj.origin_y() + proj.rho_z() * q.z;
  const Scalar x = lifted / std::cos(proj.theta());
  const Scalar y = q.sx - proj.origin_x() + lifted * std::tan(proj.theta());
  return {x / proj.scale(), y / proj.scale(), q.z / proj.scale()};
}

}  // namespace oblique
