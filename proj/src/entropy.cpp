#include "jtx/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include <zlib.h>

#include "jtx/error.hpp"

namespace jtx {

const std::array<int, 64>& zigzag_order() {
  static const std::array<int, 64> order = [] {
    std::array<int, 64> o{};
    int i = 0;
    for (int diag = 0; diag < 15; ++diag) {
      const int lo = std::max(0, diag - 7);
      const int hi = std::min(diag, 7);
      // Odd anti-diagonals run downwards (row increasing), even ones upwards.
      if (diag % 2 == 1) {
        for (int row = lo; row <= hi; ++row) o[i++] = 8 * row + (diag - row);
      } else {
        for (int row = hi; row >= lo; --row) o[i++] = 8 * row + (diag - row);
      }
    }
    return o;
  }();
  return order;
}

ScanVector zigzag(const IntBlock8& block) {
  ScanVector out{};
  const auto& order = zigzag_order();
  for (int i = 0; i < 64; ++i) out[i] = block(order[i] / 8, order[i] % 8);
  return out;
}

IntBlock8 unzigzag(const ScanVector& scan) {
  IntBlock8 out;
  const auto& order = zigzag_order();
  for (int i = 0; i < 64; ++i) out(order[i] / 8, order[i] % 8) = scan[i];
  return out;
}

// ---------------------------------------------------------------------------

void BitWriter::put(std::uint32_t bits, int count) {
  for (int i = count - 1; i >= 0; --i) {
    acc_ = (acc_ << 1) | ((bits >> i) & 1u);
    if (++filled_ == 8) {
      bytes_.push_back(static_cast<std::uint8_t>(acc_));
      acc_ = 0;
      filled_ = 0;
    }
  }
}

std::vector<std::uint8_t> BitWriter::finish() {
  if (filled_ > 0) put((1u << (8 - filled_)) - 1, 8 - filled_);
  return std::move(bytes_);
}

int BitReader::bit() {
  if (pos_ >= bytes_.size() * 8) throw CorruptStream("stream exhausted", pos_);
  const int b = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1;
  ++pos_;
  return b;
}

std::uint32_t BitReader::bits(int count) {
  std::uint32_t v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint32_t>(bit());
  return v;
}

// ---------------------------------------------------------------------------

HuffmanTable::HuffmanTable(const std::array<std::uint8_t, 16>& counts, std::vector<std::uint8_t> symbols)
    : counts_(counts), symbols_(std::move(symbols)) {
  std::size_t total = 0;
  for (auto c : counts_) total += c;
  if (total != symbols_.size()) throw InvalidArgument("huffman: counts do not match symbol list");

  std::array<bool, 256> seen{};
  int code = 0;
  std::size_t k = 0;
  for (int len = 1; len <= 16; ++len) {
    first_index_[len] = static_cast<int>(k);
    min_code_[len] = code;
    for (int i = 0; i < counts_[len - 1]; ++i, ++k, ++code) {
      const std::uint8_t s = symbols_[k];
      if (seen[s]) throw InvalidArgument("huffman: duplicate symbol");
      seen[s] = true;
      codes_[s] = {static_cast<std::uint16_t>(code), static_cast<std::uint8_t>(len)};
    }
    max_code_[len] = counts_[len - 1] ? code - 1 : -1;
    if (code > (1 << len)) throw InvalidArgument("huffman: code space overflow");
    code <<= 1;
  }
}

int HuffmanTable::decode(BitReader& reader) const {
  const std::size_t start = reader.offset();
  int code = reader.bit();
  for (int len = 1; len <= 16; ++len) {
    if (max_code_[len] >= 0 && code <= max_code_[len] && code >= min_code_[len])
      return symbols_[first_index_[len] + code - min_code_[len]];
    if (len < 16) code = (code << 1) | reader.bit();
  }
  throw CorruptStream("undefined Huffman code", start);
}

double HuffmanTable::kraft_sum() const {
  double sum = 0;
  for (int len = 1; len <= 16; ++len) sum += counts_[len - 1] * std::ldexp(1.0, -len);
  return sum;
}

namespace {

const std::vector<std::uint8_t> kDcSymbols = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};

const std::vector<std::uint8_t> kAcLumaSymbols = {
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07, 0x22, 0x71,
    0x14, 0x32, 0x81, 0x91, 0xA1, 0x08, 0x23, 0x42, 0xB1, 0xC1, 0x15, 0x52, 0xD1, 0xF0, 0x24, 0x33, 0x62, 0x72,
    0x82, 0x09, 0x0A, 0x16, 0x17, 0x18, 0x19, 0x1A, 0x25, 0x26, 0x27, 0x28, 0x29, 0x2A, 0x34, 0x35, 0x36, 0x37,
    0x38, 0x39, 0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49, 0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59,
    0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7A, 0x83,
    0x84, 0x85, 0x86, 0x87, 0x88, 0x89, 0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9A, 0xA2, 0xA3,
    0xA4, 0xA5, 0xA6, 0xA7, 0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6, 0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3,
    0xC4, 0xC5, 0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE1, 0xE2,
    0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA, 0xF1, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8, 0xF9, 0xFA};

const std::vector<std::uint8_t> kAcChromaSymbols = {
    0x00, 0x01, 0x02, 0x03, 0x11, 0x04, 0x05, 0x21, 0x31, 0x06, 0x12, 0x41, 0x51, 0x07, 0x61, 0x71, 0x13, 0x22,
    0x32, 0x81, 0x08, 0x14, 0x42, 0x91, 0xA1, 0xB1, 0xC1, 0x09, 0x23, 0x33, 0x52, 0xF0, 0x15, 0x62, 0x72, 0xD1,
    0x0A, 0x16, 0x24, 0x34, 0xE1, 0x25, 0xF1, 0x17, 0x18, 0x19, 0x1A, 0x26, 0x27, 0x28, 0x29, 0x2A, 0x35, 0x36,
    0x37, 0x38, 0x39, 0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49, 0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58,
    0x59, 0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7A,
    0x82, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89, 0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9A,
    0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7, 0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6, 0xB7, 0xB8, 0xB9, 0xBA,
    0xC2, 0xC3, 0xC4, 0xC5, 0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA,
    0xE2, 0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8, 0xF9, 0xFA};

}  // namespace

const HuffmanTable& dc_luma_table() {
  static const HuffmanTable t({0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0}, kDcSymbols);
  return t;
}

const HuffmanTable& dc_chroma_table() {
  static const HuffmanTable t({0, 3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0}, kDcSymbols);
  return t;
}

const HuffmanTable& ac_luma_table() {
  static const HuffmanTable t({0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 125}, kAcLumaSymbols);
  return t;
}

const HuffmanTable& ac_chroma_table() {
  static const HuffmanTable t({0, 2, 1, 2, 4, 4, 3, 4, 7, 5, 4, 4, 0, 1, 2, 119}, kAcChromaSymbols);
  return t;
}

HuffmanPair standard_tables(TableRole role) {
  if (role == TableRole::Luma) return {dc_luma_table(), ac_luma_table()};
  return {dc_chroma_table(), ac_chroma_table()};
}

// ---------------------------------------------------------------------------

int saturate_to_codable(IntBlock8& block) {
  const int clipped = static_cast<int>((block.array().abs() > kMaxCodableMagnitude).count());
  if (clipped) block = block.cwiseMax(-kMaxCodableMagnitude).cwiseMin(kMaxCodableMagnitude);
  return clipped;
}

int magnitude_category(int v) { return std::bit_width(static_cast<unsigned>(v < 0 ? -v : v)); }

std::uint32_t amplitude_bits(int v, int size) {
  if (size == 0) return 0;
  const std::uint32_t mask = (1u << size) - 1;
  return static_cast<std::uint32_t>(v >= 0 ? v : v - 1) & mask;
}

int decode_amplitude(std::uint32_t bits, int size) {
  if (size == 0) return 0;
  if (bits < (1u << (size - 1))) return static_cast<int>(bits) - static_cast<int>((1u << size) - 1);
  return static_cast<int>(bits);
}

std::vector<AcSymbol> ac_symbols(const ScanVector& scan) {
  std::vector<AcSymbol> out;
  int last = 63;
  while (last > 0 && scan[last] == 0) --last;
  int run = 0;
  for (int k = 1; k <= last; ++k) {
    if (scan[k] == 0) {
      ++run;
      continue;
    }
    while (run > 15) {
      out.push_back({15, 0, 0});
      run -= 16;
    }
    const int size = magnitude_category(scan[k]);
    if (size > kMaxAcCategory) throw OverflowError("entropy: AC coefficient overflow (category " +
                                                   std::to_string(size) + ")");
    out.push_back({run, size, amplitude_bits(scan[k], size)});
    run = 0;
  }
  if (last < 63) out.push_back({0, 0, 0});
  return out;
}

namespace {

void put_code(BitWriter& w, const HuffmanTable& table, std::uint8_t symbol) {
  const HuffCode& hc = table.code(symbol);
  if (hc.length == 0) throw InvalidArgument("entropy: symbol has no Huffman code");
  w.put(hc.code, hc.length);
}

}  // namespace

std::vector<std::uint8_t> encode_plane(std::span<const IntBlock8> blocks, const HuffmanPair& tables) {
  BitWriter w;
  int prev_dc = 0;
  for (const IntBlock8& block : blocks) {
    const ScanVector scan = zigzag(block);
    const int diff = scan[0] - prev_dc;
    prev_dc = scan[0];
    const int dc_size = magnitude_category(diff);
    if (dc_size > kMaxDcCategory)
      throw OverflowError("entropy: DC difference overflow (category " + std::to_string(dc_size) + ")");
    put_code(w, tables.dc, static_cast<std::uint8_t>(dc_size));
    w.put(amplitude_bits(diff, dc_size), dc_size);
    for (const AcSymbol& s : ac_symbols(scan)) {
      put_code(w, tables.ac, s.byte());
      w.put(s.bits, s.size);
    }
  }
  return w.finish();
}

std::vector<IntBlock8> decode_plane(std::span<const std::uint8_t> bytes, std::size_t block_count,
                                    const HuffmanPair& tables) {
  BitReader r(bytes);
  std::vector<IntBlock8> out;
  out.reserve(block_count);
  int prev_dc = 0;
  for (std::size_t b = 0; b < block_count; ++b) {
    ScanVector scan{};
    const std::size_t dc_at = r.offset();
    const int dc_size = tables.dc.decode(r);
    if (dc_size > kMaxDcCategory) throw CorruptStream("invalid DC category", dc_at);
    prev_dc += decode_amplitude(r.bits(dc_size), dc_size);
    if (std::abs(prev_dc) > kMaxQuantized) throw CorruptStream("DC out of range", dc_at);
    scan[0] = prev_dc;
    for (int k = 1; k < 64;) {
      const std::size_t at = r.offset();
      const int symbol = tables.ac.decode(r);
      const int run = symbol >> 4;
      const int size = symbol & 15;
      if (size == 0) {
        if (run == 0) break;  // EOB
        if (run != 15) throw CorruptStream("invalid AC symbol", at);
        k += 16;
        if (k > 63) throw CorruptStream("zero run past index 63", at);
        continue;
      }
      if (size > kMaxAcCategory) throw CorruptStream("invalid AC category", at);
      k += run;
      if (k > 63) throw CorruptStream("zero run past index 63", at);
      scan[k++] = decode_amplitude(r.bits(size), size);
    }
    out.push_back(unzigzag(scan));
  }
  // Only the 1-bit padding of the final byte may remain.
  const std::size_t rest = r.remaining();
  if (rest >= 8) throw CorruptStream("trailing data after last block", r.offset());
  if (rest > 0 && r.bits(static_cast<int>(rest)) != (1u << rest) - 1)
    throw CorruptStream("non-1 padding bits", bytes.size() * 8 - rest);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'J', 'T', 'X', '1'};
constexpr std::size_t kFixedHeader = 4 + 1 + 1 + 1 + 1 + 4 + 4 + 1 + 128;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

std::uint32_t checksum(std::span<const std::uint8_t> bytes) {
  return static_cast<std::uint32_t>(
      crc32(crc32(0L, Z_NULL, 0), bytes.data(), static_cast<uInt>(bytes.size())));
}

}  // namespace

std::size_t container_overhead(int channels) { return kFixedHeader + 4 * static_cast<std::size_t>(channels) + 4; }

std::vector<std::uint8_t> write_container(const ContainerHeader& header,
                                          const std::vector<std::vector<std::uint8_t>>& payloads) {
  if (header.channels != 1 && header.channels != 3) throw InvalidArgument("container: channel count must be 1 or 3");
  if (payloads.size() != header.channels || header.payload_lengths.size() != header.channels)
    throw InvalidArgument("container: payload count does not match channel count");
  for (std::size_t i = 0; i < payloads.size(); ++i)
    if (payloads[i].size() != header.payload_lengths[i])
      throw InvalidArgument("container: payload length does not match header");

  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(header.version);
  out.push_back(static_cast<std::uint8_t>(header.transform));
  out.push_back(header.quality);
  out.push_back(header.subsampling);
  put_u32(out, header.width);
  put_u32(out, header.height);
  out.push_back(header.channels);
  for (const QuantTable* t : {&header.luma, &header.chroma})
    for (int i = 0; i < 64; ++i) out.push_back(static_cast<std::uint8_t>(t->q(i / 8, i % 8)));
  for (auto len : header.payload_lengths) put_u32(out, len);
  for (const auto& p : payloads) out.insert(out.end(), p.begin(), p.end());
  put_u32(out, checksum(out));
  return out;
}

Container read_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) throw ParseError("container: bad magic");
  if (bytes.size() < kFixedHeader) throw ParseError("container: truncated header");

  Container c;
  ContainerHeader& h = c.header;
  h.version = bytes[4];
  if (h.version != kContainerVersion) throw ParseError("container: unsupported version " + std::to_string(h.version));
  const auto id = transform_from_byte(bytes[5]);
  if (!id) throw ParseError("container: unknown transform id " + std::to_string(bytes[5]));
  h.transform = *id;
  h.quality = bytes[6];
  h.subsampling = bytes[7];
  h.width = get_u32(bytes, 8);
  h.height = get_u32(bytes, 12);
  h.channels = bytes[16];
  if (h.channels != 1 && h.channels != 3) throw ParseError("container: invalid channel count");

  const std::size_t overhead = container_overhead(h.channels);
  if (bytes.size() < overhead) throw ParseError("container: truncated header");
  std::size_t total = 0;
  for (int i = 0; i < h.channels; ++i) {
    h.payload_lengths.push_back(get_u32(bytes, kFixedHeader + 4 * i));
    total += h.payload_lengths.back();
  }
  if (overhead + total != bytes.size()) throw ParseError("container: payload length mismatch");
  const std::size_t crc_at = bytes.size() - 4;
  if (checksum(bytes.first(crc_at)) != get_u32(bytes, crc_at)) throw ParseError("container: checksum mismatch");

  if (h.quality < 1 || h.quality > 100) throw ParseError("container: invalid quality");
  if (h.subsampling > 1) throw ParseError("container: invalid subsampling mode");
  if (h.width == 0 || h.height == 0) throw ParseError("container: zero image dimension");
  h.luma.role = TableRole::Luma;
  h.chroma.role = TableRole::Chroma;
  for (int i = 0; i < 64; ++i) {
    h.luma.q(i / 8, i % 8) = bytes[17 + i];
    h.chroma.q(i / 8, i % 8) = bytes[17 + 64 + i];
  }
  if ((h.luma.q.array() == 0).any() || (h.chroma.q.array() == 0).any())
    throw ParseError("container: zero quantization divisor");

  std::size_t at = overhead - 4;
  for (auto len : h.payload_lengths) {
    c.payloads.emplace_back(bytes.begin() + at, bytes.begin() + at + len);
    at += len;
  }
  return c;
}

}  // namespace jtx
