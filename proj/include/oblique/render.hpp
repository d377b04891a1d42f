#pragma once

#include <cstdint>
#include <optional>

#include "oblique/colormap.hpp"
#include "oblique/expr.hpp"
#include "oblique/framebuffer.hpp"
#include "oblique/geometry.hpp"
#include "oblique/transform.hpp"

namespace oblique {

/// Rectangle of logical (x, y) to sample over.
struct PlotDomain {
  double x_min;
  double x_max;
  double y_min;
  double y_max;
};

/// Everything needed to plot one surface z = f(x, y).
struct PlotJob {
  expr::ExprPtr expression;
  expr::ParamEnv params;
  PlotDomain domain{-3.141592653589793, 3.141592653589793,
                    -3.141592653589793, 3.141592653589793};
  int grid_nx{300};
  int grid_ny{300};
  Projection<double> projection{0.7853981633974483, 1.0, 320.0, 240.0, 40.0};
  std::optional<ComposedTransform<double>> transform;
  ColorMap colormap = default_colormap();
  int image_width{640};
  int image_height{480};
};

struct RenderStats {
  std::int64_t total_samples{0};
  std::int64_t plotted{0};
  std::int64_t skipped_nonfinite{0};
  std::int64_t clipped{0};
  double z_min{0};
  double z_max{0};
};

struct RenderResult {
  Framebuffer framebuffer;
  RenderStats stats;
};

/// Samples f on the grid, projects each finite sample, and plots one
/// pixel per sample colored by its z value.
///
/// Two passes: the first evaluates the whole grid and finds the finite
/// z range; the second maps and draws, in row-major order with the x
/// index outermost, and commits once at the end. Non-finite samples
/// produce no pixel. A constant surface (collapsed z range) is drawn
/// at the gradient midpoint. Deterministic: identical jobs give
/// byte-identical framebuffers.
///
/// Throws RenderError when no sample is finite, and propagates
/// expression evaluation errors.
RenderResult render_surface(const PlotJob& job);

}  // namespace oblique
