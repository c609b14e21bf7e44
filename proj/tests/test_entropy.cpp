#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "jtx/entropy.hpp"

using namespace jtx;

namespace {

std::vector<IntBlock8> random_blocks(std::mt19937_64& rng, int count, int magnitude, double density) {
  std::uniform_int_distribution<int> value(-magnitude, magnitude);
  std::bernoulli_distribution nonzero(density);
  std::vector<IntBlock8> blocks(count);
  for (auto& b : blocks)
    for (int i = 0; i < 64; ++i) b(i / 8, i % 8) = nonzero(rng) ? value(rng) : 0;
  return blocks;
}

ContainerHeader sample_header(int channels) {
  ContainerHeader h;
  h.transform = TransformId::RB53;
  h.quality = 42;
  h.subsampling = 1;
  h.width = 17;
  h.height = 9;
  h.channels = static_cast<std::uint8_t>(channels);
  h.luma.q = IntBlock8::Constant(3);
  h.chroma.q = IntBlock8::Constant(7);
  h.chroma.role = TableRole::Chroma;
  return h;
}

}  // namespace

TEST(Zigzag, MatchesDiagonalOrder) {
  // Independent construction: sort by anti-diagonal, alternating direction.
  std::array<int, 64> ref;
  std::iota(ref.begin(), ref.end(), 0);
  std::sort(ref.begin(), ref.end(), [](int a, int b) {
    const int ia = a / 8, ja = a % 8, ib = b / 8, jb = b % 8;
    if (ia + ja != ib + jb) return ia + ja < ib + jb;
    return (ia + ja) % 2 ? ia < ib : ia > ib;
  });
  EXPECT_EQ(zigzag_order(), ref);
  const int head[16] = {0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5};
  for (int i = 0; i < 16; ++i) EXPECT_EQ(zigzag_order()[i], head[i]);
  EXPECT_EQ(zigzag_order()[63], 63);
}

TEST(Zigzag, RoundTrip) {
  IntBlock8 b;
  for (int i = 0; i < 64; ++i) b(i / 8, i % 8) = i * 3 - 90;
  const ScanVector s = zigzag(b);
  EXPECT_EQ(s[2], b(1, 0));
  EXPECT_EQ(unzigzag(s), b);
}

TEST(Bits, MsbFirstWithOnePadding) {
  BitWriter w;
  w.put(0b101, 3);
  EXPECT_EQ(w.finish(), std::vector<std::uint8_t>{0xBF});
  BitWriter w2;
  w2.put(0xABC, 12);
  w2.put(0, 4);
  EXPECT_EQ(w2.finish(), (std::vector<std::uint8_t>{0xAB, 0xC0}));
  const std::vector<std::uint8_t> bytes = {0xAB, 0xC0};
  BitReader r(bytes);
  EXPECT_EQ(r.bits(4), 0xAu);
  EXPECT_EQ(r.bit(), 1);
  EXPECT_EQ(r.offset(), 5u);
  EXPECT_EQ(r.remaining(), 11u);
  r.bits(11);
  EXPECT_THROW(r.bit(), CorruptStream);
}

TEST(Huffman, StandardCodeWords) {
  EXPECT_EQ(dc_luma_table().code(0).length, 2);
  EXPECT_EQ(dc_luma_table().code(0).code, 0b00);
  EXPECT_EQ(dc_luma_table().code(1).code, 0b010);
  EXPECT_EQ(dc_luma_table().code(11).length, 9);
  EXPECT_EQ(dc_chroma_table().code(0).length, 2);
  EXPECT_EQ(dc_chroma_table().code(11).length, 11);
  EXPECT_EQ(ac_luma_table().code(0x00).code, 0b1010);
  EXPECT_EQ(ac_luma_table().code(0x00).length, 4);
  EXPECT_EQ(ac_luma_table().code(0x01).code, 0b00);
  EXPECT_EQ(ac_luma_table().code(0xF0).code, 0b11111111001);
  EXPECT_EQ(ac_luma_table().code(0xF0).length, 11);
  EXPECT_EQ(ac_chroma_table().code(0x00).code, 0b00);
  EXPECT_EQ(ac_chroma_table().code(0xF0).length, 10);
  EXPECT_EQ(ac_luma_table().code(0x0B).length, 0);  // category 11 is not an AC symbol
}

TEST(Huffman, KraftAndCoverage) {
  for (const HuffmanTable* t : {&dc_luma_table(), &dc_chroma_table(), &ac_luma_table(), &ac_chroma_table()}) {
    EXPECT_LT(t->kraft_sum(), 1.0);
    EXPECT_GT(t->kraft_sum(), 0.99);
  }
  EXPECT_EQ(ac_luma_table().symbols().size(), 162u);
  for (int run = 0; run < 16; ++run)
    for (int size = 1; size <= 10; ++size)
      EXPECT_GT(ac_chroma_table().code(static_cast<std::uint8_t>(run << 4 | size)).length, 0);
}

TEST(Huffman, DecodesEveryCode) {
  const HuffmanTable& t = ac_chroma_table();
  BitWriter w;
  for (auto s : t.symbols()) w.put(t.code(s).code, t.code(s).length);
  const auto bytes = w.finish();
  BitReader r(bytes);
  for (auto s : t.symbols()) ASSERT_EQ(t.decode(r), s);
}

TEST(Huffman, RejectsBadTables) {
  std::array<std::uint8_t, 16> counts{};
  counts[0] = 3;  // three 1-bit codes
  EXPECT_THROW(HuffmanTable(counts, {0, 1, 2}), InvalidArgument);
  counts[0] = 1;
  EXPECT_THROW(HuffmanTable(counts, {0, 1}), InvalidArgument);
  counts[0] = 2;
  EXPECT_THROW(HuffmanTable(counts, {4, 4}), InvalidArgument);
}

TEST(Amplitude, JpegConvention) {
  EXPECT_EQ(magnitude_category(0), 0);
  EXPECT_EQ(magnitude_category(-1), 1);
  EXPECT_EQ(magnitude_category(5), 3);
  EXPECT_EQ(magnitude_category(-1023), 10);
  EXPECT_EQ(magnitude_category(1024), 11);
  EXPECT_EQ(amplitude_bits(5, 3), 0b101u);
  EXPECT_EQ(amplitude_bits(-5, 3), 0b010u);
  EXPECT_EQ(amplitude_bits(-1, 1), 0u);
  for (int v = -2047; v <= 2047; ++v) {
    const int size = magnitude_category(v);
    ASSERT_EQ(decode_amplitude(amplitude_bits(v, size), size), v);
  }
}

TEST(Symbols, RunsZrlAndEob) {
  ScanVector s{};
  s[0] = 9;
  s[20] = 5;  // 19 zeros before it
  const auto syms = ac_symbols(s);
  ASSERT_EQ(syms.size(), 3u);
  EXPECT_TRUE(syms[0].is_zrl());
  EXPECT_EQ(syms[1], (AcSymbol{3, 3, 0b101}));
  EXPECT_EQ(syms[1].byte(), 0x33);
  EXPECT_TRUE(syms[2].is_eob());
}

TEST(Symbols, NoEobWhenLastIsNonZero) {
  ScanVector s{};
  s[63] = -1;
  const auto syms = ac_symbols(s);
  // 62 zeros: three ZRLs then (14, 1).
  ASSERT_EQ(syms.size(), 4u);
  EXPECT_EQ(syms[3], (AcSymbol{14, 1, 0}));
  ScanVector zero{};
  ASSERT_EQ(ac_symbols(zero).size(), 1u);
  EXPECT_TRUE(ac_symbols(zero)[0].is_eob());
}

TEST(Symbols, OverflowIsReported) {
  ScanVector s{};
  s[5] = 1024;
  EXPECT_THROW(ac_symbols(s), OverflowError);
  IntBlock8 b = IntBlock8::Zero();
  b(0, 0) = 2000;
  b(3, 3) = -5000;
  b(1, 1) = 1023;
  EXPECT_EQ(saturate_to_codable(b), 2);
  EXPECT_EQ(b(0, 0), 1023);
  EXPECT_EQ(b(3, 3), -1023);
}

TEST(Plane, HandAssembledStream) {
  // One luma block: DC 3, AC(1) = -1, EOB.
  //   DC cat 2 '011' + '11', AC (0,1) '00' + '0', EOB '1010' -> 0111 1000 1010 + pad 1111
  IntBlock8 b = IntBlock8::Zero();
  b(0, 0) = 3;
  b(0, 1) = -1;
  const std::vector<IntBlock8> blocks{b};
  const auto bytes = encode_plane(blocks, standard_tables(TableRole::Luma));
  EXPECT_EQ(bytes, (std::vector<std::uint8_t>{0x78, 0xAF}));
  const auto back = decode_plane(bytes, 1, standard_tables(TableRole::Luma));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], b);
}

TEST(Plane, RandomRoundTrips) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto role = trial % 2 ? TableRole::Chroma : TableRole::Luma;
    const int magnitude = std::array{1, 15, 255, 1023}[trial % 4];
    const auto blocks = random_blocks(rng, 1 + trial % 17, magnitude, (trial % 5 + 1) / 6.0);
    const auto bytes = encode_plane(blocks, standard_tables(role));
    ASSERT_EQ(decode_plane(bytes, blocks.size(), standard_tables(role)), blocks);
  }
}

TEST(Plane, ExtremeDcSwings) {
  std::vector<IntBlock8> blocks;
  for (int i = 0; i < 6; ++i) {
    IntBlock8 b = IntBlock8::Constant(i % 2 ? -1023 : 1023);
    blocks.push_back(b);
  }
  const auto bytes = encode_plane(blocks, standard_tables(TableRole::Chroma));
  EXPECT_EQ(decode_plane(bytes, blocks.size(), standard_tables(TableRole::Chroma)), blocks);
}

TEST(Plane, EmptyPlane) {
  const auto bytes = encode_plane({}, standard_tables(TableRole::Luma));
  EXPECT_TRUE(bytes.empty());
  EXPECT_TRUE(decode_plane(bytes, 0, standard_tables(TableRole::Luma)).empty());
}

TEST(Plane, DetectsCorruption) {
  IntBlock8 b = IntBlock8::Zero();
  b(0, 0) = 3;
  b(0, 1) = -1;
  const auto tables = standard_tables(TableRole::Luma);
  // Trailing byte.
  EXPECT_THROW(decode_plane(std::vector<std::uint8_t>{0x78, 0xAF, 0xFF}, 1, tables), CorruptStream);
  // Padding bits not all ones.
  EXPECT_THROW(decode_plane(std::vector<std::uint8_t>{0x78, 0xA7}, 1, tables), CorruptStream);
  // Truncated.
  EXPECT_THROW(decode_plane(std::vector<std::uint8_t>{0x78}, 1, tables), CorruptStream);
  // More blocks than the stream holds.
  EXPECT_THROW(decode_plane(std::vector<std::uint8_t>{0x78, 0xAF}, 2, tables), CorruptStream);
  // An all-ones byte is not a defined DC code.
  try {
    decode_plane(std::vector<std::uint8_t>{0xFF, 0xFF}, 1, tables);
    FAIL() << "expected CorruptStream";
  } catch (const CorruptStream& e) {
    EXPECT_EQ(e.bit_offset(), 0u);
  }
}

TEST(Container, RoundTrip) {
  const ContainerHeader h = [] {
    auto h = sample_header(3);
    h.payload_lengths = {3, 0, 1};
    return h;
  }();
  const std::vector<std::vector<std::uint8_t>> payloads = {{1, 2, 3}, {}, {9}};
  const auto bytes = write_container(h, payloads);
  EXPECT_EQ(bytes.size(), container_overhead(3) + 4);
  EXPECT_EQ(container_overhead(1), 145u + 4u + 4u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "JTX1");
  const Container c = read_container(bytes);
  EXPECT_EQ(c.header, h);
  EXPECT_EQ(c.payloads, payloads);
}

TEST(Container, LittleEndianFields) {
  auto h = sample_header(1);
  h.width = 0x01020304;
  h.payload_lengths = {0};
  const auto bytes = write_container(h, {{}});
  EXPECT_EQ(bytes[4], kContainerVersion);
  EXPECT_EQ(bytes[5], static_cast<std::uint8_t>(TransformId::RB53));
  EXPECT_EQ(bytes[6], 42);
  EXPECT_EQ(bytes[8], 0x04);
  EXPECT_EQ(bytes[11], 0x01);
  EXPECT_EQ(bytes[17], 3);  // first luma divisor
}

TEST(Container, RejectsInvalidHeaders) {
  auto h = sample_header(1);
  h.payload_lengths = {2};
  EXPECT_THROW(write_container(h, {{1}}), InvalidArgument);
  h.channels = 2;
  EXPECT_THROW(write_container(h, {{1, 2}}), InvalidArgument);
}

TEST(Container, ParseErrors) {
  auto h = sample_header(1);
  h.payload_lengths = {2};
  const auto good = write_container(h, {{0xAA, 0xBB}});

  auto expect_parse_error = [](std::vector<std::uint8_t> bytes, const std::string& what) {
    try {
      read_container(bytes);
      ADD_FAILURE() << "expected ParseError: " << what;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(what), std::string::npos) << e.what();
    }
  };
  auto bad = good;
  bad[0] = 'X';
  expect_parse_error(bad, "bad magic");
  expect_parse_error({good.begin(), good.begin() + 20}, "truncated header");
  bad = good;
  bad[4] = 2;
  expect_parse_error(bad, "unsupported version");
  bad = good;
  bad[5] = 10;
  expect_parse_error(bad, "unknown transform");
  bad = good;
  bad[16] = 2;
  expect_parse_error(bad, "invalid channel count");
  bad = good;
  bad.push_back(0);
  expect_parse_error(bad, "payload length mismatch");
  bad = good;
  bad[bad.size() - 6] ^= 1;  // payload byte
  expect_parse_error(bad, "checksum mismatch");
}
