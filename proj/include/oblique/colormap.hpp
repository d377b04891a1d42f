#pragma once

#include <cstdint>
#include <vector>

#include "oblique/errors.hpp"

namespace oblique {

struct Rgb {
  std::uint8_t r{0};
  std::uint8_t g{0};
  std::uint8_t b{0};

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct GradientStop {
  double t;
  Rgb color;
};

/// Piecewise-linear gradient over [0, 1]. Stops must be strictly
/// increasing in t, starting at 0 and ending at 1. Channel values are
/// interpolated as reals and rounded half-away-from-zero to 8 bits.
class ColorMap {
 public:
  explicit ColorMap(std::vector<GradientStop> stops);

  /// Color at position t; t is clamped to [0, 1].
  Rgb sample(double t) const;

  const std::vector<GradientStop>& stops() const noexcept { return stops_; }

 private:
  std::vector<GradientStop> stops_;
};

/// Deep blue through green to red.
ColorMap default_colormap();

/// Normalizes z into the [z_min, z_max] range (clamped) and samples the
/// gradient. Requires z_min < z_max and finite z.
Rgb color_for(const ColorMap& cm, double z, double z_min, double z_max);

}  // namespace oblique
