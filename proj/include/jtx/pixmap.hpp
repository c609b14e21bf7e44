#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace jtx {

using Index = Eigen::Index;

/// Real-valued sample plane, rows = height, cols = width.
template <typename Scalar>
using Plane = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using PlaneXd = Plane<double>;

using SamplePlane = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class ColorSpace : std::uint8_t { Gray, Rgb, YCbCr };

/// Planar 8-bit raster. One plane for Gray, three for Rgb / YCbCr.
struct Image {
  Index width = 0;
  Index height = 0;
  ColorSpace space = ColorSpace::Gray;
  std::vector<SamplePlane> planes;

  Index channels() const { return static_cast<Index>(planes.size()); }

  static Image blank(Index width, Index height, ColorSpace space);

  bool operator==(const Image& other) const;
};

// PPM (P6) / PGM (P5), maxval 255 only.
Image load_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> save_ppm(const Image& image);

Image read_image_file(const std::string& path);
void write_image_file(const std::string& path, const Image& image);
std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

// Full-range BT.601 (JFIF) conversion, rounded and clamped.
Image rgb_to_ycbcr(const Image& image);
Image ycbcr_to_rgb(const Image& image);

/// 2x2 mean; odd edges replicate the last row/column.
template <typename Scalar>
Plane<Scalar> subsample_420(const Plane<Scalar>& plane) {
  const Index rows = plane.rows();
  const Index cols = plane.cols();
  Plane<Scalar> out((rows + 1) / 2, (cols + 1) / 2);
  for (Index r = 0; r < out.rows(); ++r) {
    const Index r0 = 2 * r;
    const Index r1 = std::min(r0 + 1, rows - 1);
    for (Index c = 0; c < out.cols(); ++c) {
      const Index c0 = 2 * c;
      const Index c1 = std::min(c0 + 1, cols - 1);
      out(r, c) = (plane(r0, c0) + plane(r0, c1) + plane(r1, c0) + plane(r1, c1)) / Scalar(4);
    }
  }
  return out;
}

/// Sample-replication upsampling, cropped to rows x cols.
template <typename Scalar>
Plane<Scalar> upsample_420(const Plane<Scalar>& plane, Index rows, Index cols) {
  Plane<Scalar> out(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) out(r, c) = plane(r / 2, c / 2);
  return out;
}

PlaneXd to_plane(const SamplePlane& samples);

template <typename Scalar>
Plane<Scalar> level_shift(const Plane<Scalar>& plane) {
  return plane.array() - Scalar(128);
}

/// Inverse of level_shift, rounded to nearest and clamped to [0, 255].
template <typename Scalar>
SamplePlane unshift(const Plane<Scalar>& plane) {
  return plane.unaryExpr([](Scalar v) {
    const Scalar s = std::round(v + Scalar(128));
    return static_cast<std::uint8_t>(std::clamp(s, Scalar(0), Scalar(255)));
  });
}

template <typename Scalar>
struct PaddedPlane {
  Plane<Scalar> plane;
  Index rows = 0;  // original extent
  Index cols = 0;
};

inline Index round_up_to_block(Index n) { return (n + 7) / 8 * 8; }

/// Grow to multiples of 8 by replicating the last row and column.
template <typename Scalar>
PaddedPlane<Scalar> pad_to_blocks(const Plane<Scalar>& plane) {
  const Index rows = plane.rows();
  const Index cols = plane.cols();
  Plane<Scalar> out(round_up_to_block(rows), round_up_to_block(cols));
  for (Index r = 0; r < out.rows(); ++r)
    for (Index c = 0; c < out.cols(); ++c)
      out(r, c) = plane(std::min(r, rows - 1), std::min(c, cols - 1));
  return {std::move(out), rows, cols};
}

template <typename Scalar>
Plane<Scalar> crop(const Plane<Scalar>& plane, Index rows, Index cols) {
  return plane.topLeftCorner(rows, cols);
}

}  // namespace jtx
