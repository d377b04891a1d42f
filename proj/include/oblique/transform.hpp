#pragma once

#include <cstdint>

#include "oblique/geometry.hpp"

namespace oblique {

enum class Axis { X, Y, Z };

enum class TransformKind {
  RotationX,
  RotationY,
  RotationZ,
  UniformScale,
  Custom,
};

/// A linear 3x3 transform of logical space (no translation part),
/// applied to row vectors: p' = p * matrix.
template <typename Scalar>
struct GraphicsTransform {
  Matrix3<Scalar> matrix;
  TransformKind kind{TransformKind::Custom};
};

using GraphicsTransformd = GraphicsTransform<double>;

/// Right-handed rotation about a coordinate axis, row-vector convention.
/// rotation(Z, pi/2) takes [1,0,0] to [0,1,0].
template <typename Scalar>
GraphicsTransform<Scalar> rotation(Axis axis, Scalar angle) {
  detail::require_finite(angle, "angle");
  const Scalar c = std::cos(angle);
  const Scalar s = std::sin(angle);
  Matrix3<Scalar> m;
  TransformKind kind;
  switch (axis) {
    case Axis::X:
      m << Scalar(1), Scalar(0), Scalar(0),
          Scalar(0), c, s,
          Scalar(0), -s, c;
      kind = TransformKind::RotationX;
      break;
    case Axis::Y:
      m << c, Scalar(0), -s,
          Scalar(0), Scalar(1), Scalar(0),
          s, Scalar(0), c;
      kind = TransformKind::RotationY;
      break;
    default:
      m << c, s, Scalar(0),
          -s, c, Scalar(0),
          Scalar(0), Scalar(0), Scalar(1);
      kind = TransformKind::RotationZ;
      break;
  }
  return {m, kind};
}

/// s * I. A zero factor is rejected: the composed pipeline requires an
/// invertible transform.
template <typename Scalar>
GraphicsTransform<Scalar> uniform_scale(Scalar s) {
  detail::require_finite(s, "s");
  if (s == Scalar(0)) {
    throw InvalidArgument("uniform scale factor must be nonzero");
  }
  return {Matrix3<Scalar>(Matrix3<Scalar>::Identity() * s),
          TransformKind::UniformScale};
}

template <typename Scalar>
GraphicsTransform<Scalar> identity_transform() {
  return {Matrix3<Scalar>(Matrix3<Scalar>::Identity()), TransformKind::Custom};
}

/// Applying a then b, as row vectors multiply: p * (a.matrix * b.matrix).
template <typename Scalar>
GraphicsTransform<Scalar> combine(const GraphicsTransform<Scalar>& a,
                                  const GraphicsTransform<Scalar>& b) {
  return {Matrix3<Scalar>(a.matrix * b.matrix), TransformKind::Custom};
}

/// The precomposed screen-space pipeline M' = M^-1 * T * M together with
/// the screen origin it conjugates around. Immutable once built; compute
/// it once per transform and reuse it for every point.
template <typename Scalar>
struct ComposedTransform {
  Matrix3<Scalar> m_prime;
  Scalar origin_x;
  Scalar origin_y;
};

using ComposedTransformd = ComposedTransform<double>;

template <typename Scalar>
ComposedTransform<Scalar> compose(const Projection<Scalar>& proj,
                                  const GraphicsTransform<Scalar>& t) {
  const Matrix3<Scalar> m = forward_matrix(proj);
  const Matrix3<Scalar> m_inv = inverse_matrix(m);
  return {Matrix3<Scalar>(m_inv * t.matrix * m), proj.origin_x(),
          proj.origin_y()};
}

/// Transforms a mapped point entirely in screen space:
///   q' = ([sx - x0, sy - y0, z] * M') + [x0, y0, 0]
/// The origin is subtracted and re-added because the forward map is
/// affine; M' only conjugates its linear part.
template <typename Scalar>
MappedPoint<Scalar> apply(const ComposedTransform<Scalar>& ct,
                          const MappedPoint<Scalar>& q) {
  detail::require_finite(q.sx, "sx");
  detail::require_finite(q.sy, "sy");
  detail::require_finite(q.z, "z");
  const RowVector3<Scalar> centered(q.sx - ct.origin_x, q.sy - ct.origin_y,
                                    q.z);
  const RowVector3<Scalar> out = centered * ct.m_prime;
  return {out[0] + ct.origin_x, out[1] + ct.origin_y, out[2]};
}

/// (M')^n by incremental multiplication. Applying the result equals
/// composing with T^n. n = 0 yields the identity transform.
template <typename Scalar>
ComposedTransform<Scalar> power(const ComposedTransform<Scalar>& ct,
                                std::int64_t n) {
  if (n < 0) {
    throw InvalidArgument("power exponent must be >= 0, got " +
                          std::to_string(n));
  }
  Matrix3<Scalar> acc = Matrix3<Scalar>::Identity();
  for (std::int64_t i = 0; i < n; ++i) {
    acc = Matrix3<Scalar>(acc * ct.m_prime);
  }
  return {acc, ct.origin_x, ct.origin_y};
}

enum class Strategy {
  Naive3Step,
  Precomposed,
  IncrementalPower,
};

struct MultiplicationCount {
  std::int64_t matrix_matrix{0};
  std::int64_t point_matrix{0};
};

/// Ledger of 3x3 matrix-matrix products each strategy spends to push
/// `points` mapped points through T^n, with the 1x3 row-vector products
/// tallied in a separate column.
///
///  - naive-3-step rebuilds M^-1 * T * M for every point and every
///    application (2 products each) and walks each point through the
///    three row products per application.
///  - precomposed builds the pipeline once: M^-1 * T, then * M. Asking
///    it for a fresh power n >= 2 means forming T^n first (n products)
///    and conjugating again, n + 2 in total.
///  - incremental-power extends an existing M' to (M')^n, n - 1 products,
///    with no T^n and no re-conjugation.
inline MultiplicationCount count_multiplications(Strategy strategy,
                                                 std::int64_t points,
                                                 std::int64_t n) {
  if (points < 0 || n < 0) {
    throw InvalidArgument("counts must be >= 0");
  }
  switch (strategy) {
    case Strategy::Naive3Step:
      return {2 * n * points, 3 * n * points};
    case Strategy::Precomposed:
      return {n <= 1 ? 2 : n + 2, points};
    case Strategy::IncrementalPower:
      return {n >= 1 ? n - 1 : 0, points};
  }
  throw InvalidArgument("unknown strategy");
}

inline const char* strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::Naive3Step:
      return "naive-3-step";
    case Strategy::Precomposed:
      return "precomposed";
    case Strategy::IncrementalPower:
      return "incremental-power";
  }
  return "?";
}

}  // namespace oblique
