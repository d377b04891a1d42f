#include "oblique/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oblique {

namespace {

void validate(const PlotJob& job) {
  if (!job.expression) {
    throw InvalidArgument("plot job has no expression");
  }
  if (!(job.domain.x_min < job.domain.x_max) ||
      !(job.domain.y_min < job.domain.y_max)) {
    throw InvalidArgument("plot domain must have x_min < x_max and "
                          "y_min < y_max");
  }
  if (job.grid_nx < 2 || job.grid_ny < 2) {
    throw InvalidArgument("grid must be at least 2x2");
  }
  if (job.image_width < 1 || job.image_height < 1) {
    throw InvalidArgument("image dimensions must be >= 1");
  }
}

double grid_coord(double lo, double hi, int i, int n) {
  return std::lerp(lo, hi, static_cast<double>(i) / (n - 1));
}

}  // namespace

RenderResult render_surface(const PlotJob& job) {
  validate(job);

  const int nx = job.grid_nx;
  const int ny = job.grid_ny;
  RenderStats stats;
  stats.total_samples = static_cast<std::int64_t>(nx) * ny;

  // pass 1: evaluate the grid and find the finite z range
  std::vector<double> zs(static_cast<std::size_t>(nx) *
                         static_cast<std::size_t>(ny));
  double z_min = std::numeric_limits<double>::infinity();
  double z_max = -std::numeric_limits<double>::infinity();
  std::int64_t finite_count = 0;
  for (int i = 0; i < nx; ++i) {
    const double x = grid_coord(job.domain.x_min, job.domain.x_max, i, nx);
    for (int j = 0; j < ny; ++j) {
      const double y = grid_coord(job.domain.y_min, job.domain.y_max, j, ny);
      const double z = expr::evaluate(*job.expression, x, y, job.params);
      zs[static_cast<std::size_t>(i) * ny + j] = z;
      if (std::isfinite(z)) {
        z_min = std::min(z_min, z);
        z_max = std::max(z_max, z);
        ++finite_count;
      }
    }
  }
  if (finite_count == 0) {
    throw RenderError("empty plot: no grid sample evaluated to a finite "
                      "value");
  }
  stats.z_min = z_min;
  stats.z_max = z_max;
  const bool collapsed = (z_min == z_max);

  // pass 2: project and draw, x index outermost
  Framebuffer fb(job.image_width, job.image_height);
  for (int i = 0; i < nx; ++i) {
    const double x = grid_coord(job.domain.x_min, job.domain.x_max, i, nx);
    for (int j = 0; j < ny; ++j) {
      const double z = zs[static_cast<std::size_t>(i) * ny + j];
      if (!std::isfinite(z)) {
        ++stats.skipped_nonfinite;
        continue;
      }
      const double y = grid_coord(job.domain.y_min, job.domain.y_max, j, ny);
      MappedPoint<double> q =
          forward_map(LogicalPoint<double>{x, y, z}, job.projection);
      if (job.transform) {
        q = apply(*job.transform, q);
      }
      // Extreme scales can push screen coordinates past what an int can
      // hold; treat those like any other off-screen point.
      if (!std::isfinite(q.sx) || !std::isfinite(q.sy) ||
          std::abs(q.sx) > 1e9 || std::abs(q.sy) > 1e9) {
        ++stats.clipped;
        continue;
      }
      const int px = static_cast<int>(std::llround(q.sx));
      const int py = static_cast<int>(std::llround(q.sy));
      if (px < 0 || px >= fb.width() || py < 0 || py >= fb.height()) {
        ++stats.clipped;
        continue;
      }
      const Rgb color = collapsed ? job.colormap.sample(0.5)
                                  : color_for(job.colormap, z, z_min, z_max);
      fb.put_pixel(px, py, color);
      ++stats.plotted;
    }
  }
  fb.commit();
  return {std::move(fb), stats};
}

}  // namespace oblique
