#include "jtx/codec.hpp"

#include <string>

#include "jtx/entropy.hpp"
#include "jtx/error.hpp"
#include "jtx/lct.hpp"
#include "jtx/wavelets.hpp"

namespace jtx {

PlaneXd forward_transform(TransformId id, const PlaneXd& plane) {
  switch (id) {
    case TransformId::LCT: return lct_forward(plane);
    case TransformId::DWT53:
    case TransformId::DWT97: return dwt2_forward(plane, lifting_spec(id));
    case TransformId::RB53:
    case TransformId::RB97: return rb_forward(plane, lifting_spec(id));
    default: return blockwise_forward(id, plane);
  }
}

PlaneXd inverse_transform(TransformId id, const PlaneXd& coefs) {
  switch (id) {
    case TransformId::LCT: return lct_inverse(coefs);
    case TransformId::DWT53:
    case TransformId::DWT97: return dwt2_inverse(coefs, lifting_spec(id));
    case TransformId::RB53:
    case TransformId::RB97: return rb_inverse(coefs, lifting_spec(id));
    default: return blockwise_inverse(id, coefs);
  }
}

std::vector<IntBlock8> quantize_plane(const PlaneXd& coefs, const QuantTable& table) {
  require_block_multiple(coefs, "quantize_plane");
  std::vector<IntBlock8> blocks;
  blocks.reserve(static_cast<std::size_t>(coefs.size() / 64));
  for (Index r = 0; r < coefs.rows(); r += 8)
    for (Index c = 0; c < coefs.cols(); c += 8) blocks.push_back(quantize(coefs.block<8, 8>(r, c), table));
  return blocks;
}

PlaneXd dequantize_plane(std::span<const IntBlock8> blocks, Index rows, Index cols, const QuantTable& table) {
  if (rows % 8 != 0 || cols % 8 != 0 || static_cast<Index>(blocks.size()) != rows * cols / 64)
    throw InvalidArgument("dequantize_plane: block count does not match plane size");
  PlaneXd out(rows, cols);
  std::size_t i = 0;
  for (Index r = 0; r < rows; r += 8)
    for (Index c = 0; c < cols; c += 8) out.block<8, 8>(r, c) = dequantize(blocks[i++], table);
  return out;
}

namespace {

struct PlaneGeometry {
  Index rows;
  Index cols;
};

PlaneGeometry channel_geometry(Index height, Index width, int channel, bool subsampled) {
  if (channel > 0 && subsampled) return {(height + 1) / 2, (width + 1) / 2};
  return {height, width};
}

}  // namespace

std::vector<std::uint8_t> encode(const Image& image, const EncodeParams& params) {
  if (image.width <= 0 || image.height <= 0) throw InvalidArgument("encode: zero-dimension image");
  if (image.space == ColorSpace::YCbCr) throw InvalidArgument("encode: expected an RGB or grayscale image");
  if (image.channels() != (image.space == ColorSpace::Rgb ? 3 : 1))
    throw InvalidArgument("encode: channel count does not match colour space");
  if (image.width > 0xFFFFFFFFLL || image.height > 0xFFFFFFFFLL) throw InvalidArgument("encode: image too large");

  const auto [luma_base, chroma_base] = default_tables();
  ContainerHeader header;
  header.transform = params.transform;
  header.quality = static_cast<std::uint8_t>(params.quality);
  header.subsampling = static_cast<std::uint8_t>(params.subsampling);
  header.width = static_cast<std::uint32_t>(image.width);
  header.height = static_cast<std::uint32_t>(image.height);
  header.channels = static_cast<std::uint8_t>(image.channels());
  header.luma = scale_table(luma_base, params.quality);
  header.chroma = scale_table(chroma_base, params.quality);

  const Image source = image.space == ColorSpace::Rgb ? rgb_to_ycbcr(image) : image;
  const bool subsampled = params.subsampling == Subsampling::S420 && source.channels() == 3;

  std::vector<std::vector<std::uint8_t>> payloads;
  for (int ch = 0; ch < source.channels(); ++ch) {
    PlaneXd plane = to_plane(source.planes[ch]);
    if (ch > 0 && subsampled) plane = subsample_420(plane);
    const PaddedPlane<double> padded = pad_to_blocks(level_shift(plane));
    const PlaneXd coefs = forward_transform(params.transform, padded.plane);
    const QuantTable& table = ch == 0 ? header.luma : header.chroma;
    auto blocks = quantize_plane(coefs, table);
    // Expansive transforms (LCT folding) can exceed the baseline categories
    // at high quality; clip rather than fail.
    for (auto& block : blocks) saturate_to_codable(block);
    payloads.push_back(encode_plane(blocks, standard_tables(table.role)));
    header.payload_lengths.push_back(static_cast<std::uint32_t>(payloads.back().size()));
  }
  return write_container(header, payloads);
}

Image decode(std::span<const std::uint8_t> bytes) {
  const Container container = read_container(bytes);
  const ContainerHeader& h = container.header;
  const Index width = h.width;
  const Index height = h.height;
  const bool subsampled = h.subsampling == 1 && h.channels == 3;

  Image out = Image::blank(width, height, h.channels == 3 ? ColorSpace::YCbCr : ColorSpace::Gray);
  for (int ch = 0; ch < h.channels; ++ch) {
    const auto geom = channel_geometry(height, width, ch, subsampled);
    const Index rows = round_up_to_block(geom.rows);
    const Index cols = round_up_to_block(geom.cols);
    const std::size_t block_count = static_cast<std::size_t>(rows / 8) * static_cast<std::size_t>(cols / 8);
    const auto& payload = container.payloads[ch];
    // Every block costs at least a DC code and an EOB code (>= 2 bits each).
    if (block_count > payload.size() * 2)
      throw CorruptStream("channel " + std::to_string(ch) + ": payload too short for image size", 0);

    const QuantTable& table = ch == 0 ? h.luma : h.chroma;
    std::vector<IntBlock8> blocks;
    try {
      blocks = decode_plane(payload, block_count, standard_tables(table.role));
    } catch (const CorruptStream& e) {
      throw CorruptStream("channel " + std::to_string(ch) + ": " + e.reason(), e.bit_offset());
    }
    const PlaneXd coefs = dequantize_plane(blocks, rows, cols, table);
    PlaneXd plane = crop(inverse_transform(h.transform, coefs), geom.rows, geom.cols);
    if (ch > 0 && subsampled) plane = upsample_420(plane, height, width);
    out.planes[ch] = unshift(plane);
  }
  return h.channels == 3 ? ycbcr_to_rgb(out) : out;
}

}  // namespace jtx
