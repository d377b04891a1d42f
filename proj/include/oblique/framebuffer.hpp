#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "oblique/colormap.hpp"
#include "oblique/errors.hpp"

namespace oblique {

/// Double-buffered W x H grid of RGB pixels, black on construction.
/// Drawing goes to the back buffer; readers only ever see the front
/// buffer, which changes when commit() copies the back buffer over it.
/// Out-of-bounds writes are silently dropped (and counted).
class Framebuffer {
 public:
  Framebuffer(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  void put_pixel(int px, int py, Rgb color);

  /// Publishes the back buffer.
  void commit();

  /// Pixel of the published (front) buffer. Throws on out-of-range.
  Rgb front_pixel(int px, int py) const;

  /// Committed pixels, row-major RGB, top row first.
  const std::vector<std::uint8_t>& front_data() const noexcept {
    return front_;
  }

  /// Number of put_pixel calls dropped by clipping so far.
  std::uint64_t clipped_writes() const noexcept { return clipped_; }

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> front_;
  std::vector<std::uint8_t> back_;
  std::uint64_t clipped_{0};
};

/// Serializes the committed image as binary PPM:
///   "P6\n{width} {height}\n255\n" followed by the raw RGB bytes.
/// Returns the number of bytes written; throws IoError if the sink
/// fails.
std::size_t write_ppm(const Framebuffer& fb, std::ostream& out);

}  // namespace oblique
