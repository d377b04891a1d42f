#include "oblique/framebuffer.hpp"

#include <ostream>
#include <string>

namespace oblique {

Framebuffer::Framebuffer(int width, int height)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("framebuffer dimensions must be >= 1, got " +
                          std::to_string(width) + "x" +
                          std::to_string(height));
  }
  const std::size_t bytes =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  front_.assign(bytes, 0);
  back_.assign(bytes, 0);
}

void Framebuffer::put_pixel(int px, int py, Rgb color) {
  if (px < 0 || px >= width_ || py < 0 || py >= height_) {
    ++clipped_;
    return;
  }
  const std::size_t i =
      (static_cast<std::size_t>(py) * static_cast<std::size_t>(width_) +
       static_cast<std::size_t>(px)) *
      3;
  back_[i] = color.r;
  back_[i + 1] = color.g;
  back_[i + 2] = color.b;
}

void Framebuffer::commit() { front_ = back_; }

Rgb Framebuffer::front_pixel(int px, int py) const {
  if (px < 0 || px >= width_ || py < 0 || py >= height_) {
    throw InvalidArgument("front_pixel out of range");
  }
  const std::size_t i =
      (static_cast<std::size_t>(py) * static_cast<std::size_t>(width_) +
       static_cast<std::size_t>(px)) *
      3;
  return {front_[i], front_[i + 1], front_[i + 2]};
}

std::size_t write_ppm(const Framebuffer& fb, std::ostream& out) {
  const std::string header = "P6\n" + std::to_string(fb.width()) + " " +
                             std::to_string(fb.height()) + "\n255\n";
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  const auto& data = fb.front_data();
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) {
    throw IoError("PPM write failed");
  }
  return header.size() + data.size();
}

}  // namespace oblique
