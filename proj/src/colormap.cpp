#include "oblique/colormap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oblique {

namespace {

std::uint8_t round_channel(double v) {
  // half away from zero; channel values are never negative
  return static_cast<std::uint8_t>(
      std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

}  // namespace

ColorMap::ColorMap(std::vector<GradientStop> stops) : stops_(std::move(stops)) {
  if (stops_.size() < 2) {
    throw InvalidArgument("colormap needs at least two stops");
  }
  if (stops_.front().t != 0.0 || stops_.back().t != 1.0) {
    throw InvalidArgument("colormap stops must start at t=0 and end at t=1");
  }
  for (std::size_t i = 1; i < stops_.size(); ++i) {
    if (!(stops_[i - 1].t < stops_[i].t)) {
      throw InvalidArgument("colormap stops must be strictly increasing in t");
    }
  }
}

Rgb ColorMap::sample(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  auto hi = std::upper_bound(
      stops_.begin(), stops_.end(), t,
      [](double value, const GradientStop& s) { return value < s.t; });
  if (hi == stops_.end()) {
    return stops_.back().color;
  }
  if (hi == stops_.begin()) {
    return stops_.front().color;
  }
  const GradientStop& a = *(hi - 1);
  const GradientStop& b = *hi;
  if (t == a.t) {
    return a.color;
  }
  const double u = (t - a.t) / (b.t - a.t);
  return {round_channel(a.color.r + u * (b.color.r - a.color.r)),
          round_channel(a.color.g + u * (b.color.g - a.color.g)),
          round_channel(a.color.b + u * (b.color.b - a.color.b))};
}

ColorMap default_colormap() {
  return ColorMap({{0.0, {0, 0, 160}}, {0.5, {0, 200, 120}}, {1.0, {255, 40, 40}}});
}

Rgb color_for(const ColorMap& cm, double z, double z_min, double z_max) {
  if (!(z_min < z_max)) {
    throw InvalidArgument("z_min must be strictly less than z_max");
  }
  if (!std::isfinite(z)) {
    throw NonFiniteCoordinate("z", z);
  }
  return cm.sample((z - z_min) / (z_max - z_min));
}

}  // namespace oblique
