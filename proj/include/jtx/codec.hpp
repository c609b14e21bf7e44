#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jtx/blockxf.hpp"
#include "jtx/pixmap.hpp"
#include "jtx/quant.hpp"

namespace jtx {

enum class Subsampling : std::uint8_t { S444 = 0, S420 = 1 };

struct EncodeParams {
  TransformId transform = TransformId::DCT;
  int quality = 75;
  Subsampling subsampling = Subsampling::S444;
};

/// Level-shifted, block-padded plane -> coefficient plane laid out as 8x8
/// blocks, for any transform (block path or whole-plane path).
PlaneXd forward_transform(TransformId id, const PlaneXd& plane);
PlaneXd inverse_transform(TransformId id, const PlaneXd& coefs);

/// Quantize every 8x8 block of a coefficient plane, row-major block order.
std::vector<IntBlock8> quantize_plane(const PlaneXd& coefs, const QuantTable& table);
PlaneXd dequantize_plane(std::span<const IntBlock8> blocks, Index rows, Index cols, const QuantTable& table);

/// Encode an RGB or grayscale image into a JTX1 container. Deterministic.
std::vector<std::uint8_t> encode(const Image& image, const EncodeParams& params);

/// Decode a JTX1 container back to an RGB or grayscale image.
Image decode(std::span<const std::uint8_t> bytes);

}  // namespace jtx
