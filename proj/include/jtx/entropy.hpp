#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jtx/blockxf.hpp"
#include "jtx/quant.hpp"

namespace jtx {

// ---------------------------------------------------------------------------
// Zig-zag scan

/// order[i] = row-major index (8 * row + col) of the i-th scanned coefficient.
const std::array<int, 64>& zigzag_order();

using ScanVector = std::array<int, 64>;

ScanVector zigzag(const IntBlock8& block);
IntBlock8 unzigzag(const ScanVector& scan);

// ---------------------------------------------------------------------------
// Bit I/O. Big-endian bit order within bytes; the final byte is padded with 1s.

class BitWriter {
 public:
  void put(std::uint32_t bits, int count);
  /// Pads the partial byte with 1-bits and returns the buffer.
  std::vector<std::uint8_t> finish();

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint32_t acc_ = 0;
  int filled_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  int bit();
  std::uint32_t bits(int count);
  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() * 8 - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Huffman coding

struct HuffCode {
  std::uint16_t code = 0;
  std::uint8_t length = 0;  // 0: symbol has no code
};

/// Canonical Huffman table given as code counts per length 1..16 plus the
/// symbols in code order.
class HuffmanTable {
 public:
  HuffmanTable(const std::array<std::uint8_t, 16>& counts, std::vector<std::uint8_t> symbols);

  const HuffCode& code(std::uint8_t symbol) const { return codes_[symbol]; }
  int decode(BitReader& reader) const;

  const std::array<std::uint8_t, 16>& counts() const { return counts_; }
  const std::vector<std::uint8_t>& symbols() const { return symbols_; }
  /// Sum over codes of 2^-length.
  double kraft_sum() const;

 private:
  std::array<std::uint8_t, 16> counts_;
  std::vector<std::uint8_t> symbols_;
  std::array<HuffCode, 256> codes_{};
  std::array<int, 17> min_code_{};
  std::array<int, 17> max_code_{};  // -1 when no code of that length
  std::array<int, 17> first_index_{};
};

struct HuffmanPair {
  const HuffmanTable& dc;
  const HuffmanTable& ac;
};

const HuffmanTable& dc_luma_table();
const HuffmanTable& dc_chroma_table();
const HuffmanTable& ac_luma_table();
const HuffmanTable& ac_chroma_table();
HuffmanPair standard_tables(TableRole role);

// ---------------------------------------------------------------------------
// Symbols

inline constexpr int kMaxAcCategory = 10;
inline constexpr int kMaxDcCategory = 11;

/// Largest quantized magnitude the baseline tables can carry for AC values
/// (category 10) and for DC values such that any DC difference stays within
/// category 11.
inline constexpr int kMaxCodableMagnitude = 1023;

/// Saturate a quantized block to +-kMaxCodableMagnitude. Returns the number
/// of clipped coefficients.
int saturate_to_codable(IntBlock8& block);

/// Bit length of |v| (0 for v == 0).
int magnitude_category(int v);
/// Amplitude payload: v for v >= 0, v - 1 truncated to `size` bits otherwise.
std::uint32_t amplitude_bits(int v, int size);
int decode_amplitude(std::uint32_t bits, int size);

struct AcSymbol {
  int run = 0;   // preceding zeros, 0..15
  int size = 0;  // magnitude category, 0..10
  std::uint32_t bits = 0;

  std::uint8_t byte() const { return static_cast<std::uint8_t>((run << 4) | size); }
  bool is_eob() const { return run == 0 && size == 0; }
  bool is_zrl() const { return run == 15 && size == 0; }
  bool operator==(const AcSymbol&) const = default;
};

/// Run-length symbols for scan positions 1..63 (ZRL for 16-zero runs, EOB
/// when trailing zeros remain).
std::vector<AcSymbol> ac_symbols(const ScanVector& scan);

// ---------------------------------------------------------------------------
// Plane streams

/// DC is DPCM against the previous block (first block predicts from 0).
std::vector<std::uint8_t> encode_plane(std::span<const IntBlock8> blocks, const HuffmanPair& tables);
std::vector<IntBlock8> decode_plane(std::span<const std::uint8_t> bytes, std::size_t block_count,
                                    const HuffmanPair& tables);

// ---------------------------------------------------------------------------
// JTX1 container

inline constexpr std::uint8_t kContainerVersion = 1;

struct ContainerHeader {
  std::uint8_t version = kContainerVersion;
  TransformId transform = TransformId::DCT;
  std::uint8_t quality = 50;
  std::uint8_t subsampling = 0;  // 0 = 4:4:4, 1 = 4:2:0
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint8_t channels = 1;
  QuantTable luma;
  QuantTable chroma;
  std::vector<std::uint32_t> payload_lengths;

  bool operator==(const ContainerHeader&) const = default;
};

struct Container {
  ContainerHeader header;
  std::vector<std::vector<std::uint8_t>> payloads;
};

/// Serialized size of everything except the payloads.
std::size_t container_overhead(int channels);

std::vector<std::uint8_t> write_container(const ContainerHeader& header,
                                          const std::vector<std::vector<std::uint8_t>>& payloads);
Container read_container(std::span<const std::uint8_t> bytes);

}  // namespace jtx
