#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "jtx/bench.hpp"
#include "jtx/error.hpp"

using namespace jtx;

namespace {

RdCurve curve_of(std::initializer_list<std::pair<double, double>> pts) {
  RdCurve c;
  for (auto [bpp, db] : pts) c.points.push_back({TransformId::DCT, 50, bpp, db});
  return c;
}

std::vector<NamedImage> small_corpus() {
  std::vector<NamedImage> out;
  for (int k = 0; k < 3; ++k) {
    Image img = Image::blank(24 + 8 * k, 16, ColorSpace::Rgb);
    for (Index ch = 0; ch < 3; ++ch)
      for (Index r = 0; r < img.height; ++r)
        for (Index c = 0; c < img.width; ++c)
          img.planes[ch](r, c) = static_cast<std::uint8_t>((r * 7 + c * (3 + k) + ch * 40) % 256);
    out.push_back({"img" + std::to_string(k), img});
  }
  return out;
}

}  // namespace

TEST(Psnr, ClosedForms) {
  Image a = Image::blank(1, 1, ColorSpace::Gray);
  Image b = a;
  EXPECT_TRUE(std::isinf(psnr(a, b)));
  b.planes[0](0, 0) = 255;
  EXPECT_DOUBLE_EQ(psnr(a, b), 0.0);

  Image c = Image::blank(5, 3, ColorSpace::Rgb);
  Image d = c;
  for (auto& p : d.planes) p.setConstant(1);
  EXPECT_NEAR(psnr(c, d), 20 * std::log10(255.0), 1e-12);
  EXPECT_NEAR(psnr(c, d), 48.1308, 1e-4);
  EXPECT_EQ(psnr(c, d), psnr(d, c));
}

TEST(Psnr, RejectsMismatch) {
  EXPECT_THROW(psnr(Image::blank(2, 2, ColorSpace::Gray), Image::blank(2, 3, ColorSpace::Gray)), InvalidArgument);
  EXPECT_THROW(psnr(Image::blank(2, 2, ColorSpace::Gray), Image::blank(2, 2, ColorSpace::Rgb)), InvalidArgument);
}

TEST(Interpolate, AtAndBetweenSamples) {
  const RdCurve c = curve_of({{0.5, 30.0}, {1.0, 34.0}, {2.0, 38.0}});
  EXPECT_EQ(interpolate_at_rate(c, 1.0), 34.0);
  EXPECT_EQ(interpolate_at_rate(c, 0.5), 30.0);
  EXPECT_EQ(interpolate_at_rate(c, 2.0), 38.0);
  EXPECT_DOUBLE_EQ(interpolate_at_rate(c, 0.75), 32.0);
  EXPECT_DOUBLE_EQ(interpolate_at_rate(c, 1.25), 35.0);
  EXPECT_THROW(interpolate_at_rate(c, 0.49), InvalidArgument);
  EXPECT_THROW(interpolate_at_rate(c, 2.01), InvalidArgument);
  EXPECT_THROW(interpolate_at_rate(RdCurve{}, 1.0), InvalidArgument);
}

TEST(Csv, FormatAndOrdering) {
  RdCurve wht;
  wht.transform = TransformId::WHT;
  wht.points = {{TransformId::WHT, 90, 2.5, std::numeric_limits<double>::infinity()},
                {TransformId::WHT, 10, 0.25, 27.123456}};
  RdCurve dct;
  dct.transform = TransformId::DCT;
  dct.points = {{TransformId::DCT, 50, 1.0, 31.5}};
  EXPECT_EQ(curves_csv({wht, dct}),
            "transform,quality,bpp,psnr\n"
            "dct,50,1.000000,31.5000\n"
            "wht,10,0.250000,27.1235\n"
            "wht,90,2.500000,inf\n");
}

TEST(Sweep, CurvesAreMeansSortedByRate) {
  const auto corpus = small_corpus();
  SweepOptions opt{{TransformId::DCT, TransformId::RB53}, {90, 20, 50}, Subsampling::S444, 1};
  const auto result = rd_sweep(corpus, opt);
  ASSERT_EQ(result.curves.size(), 2u);
  for (std::size_t t = 0; t < 2; ++t) {
    const auto& pts = result.curves[t].points;
    ASSERT_EQ(pts.size(), 3u);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LE(pts[i - 1].bpp, pts[i].bpp);
    // quality 20 (request index 1) is the lowest-rate point
    double mean_bpp = 0, mean_psnr = 0;
    for (const auto& p : result.per_image[t][1]) {
      mean_bpp += p.bpp / 3;
      mean_psnr += p.psnr / 3;
    }
    EXPECT_EQ(pts.front().quality, 20);
    EXPECT_NEAR(pts.front().bpp, mean_bpp, 1e-12);
    EXPECT_NEAR(pts.front().psnr, mean_psnr, 1e-12);
  }
}

TEST(Sweep, BppCountsWholeContainer) {
  const auto corpus = small_corpus();
  const RdPoint p = measure(corpus[0].image, {TransformId::DCT, 50});
  const auto bytes = encode(corpus[0].image, {TransformId::DCT, 50});
  EXPECT_DOUBLE_EQ(p.bpp, 8.0 * bytes.size() / (24 * 16));
}

TEST(Sweep, IdenticalAcrossThreadCounts) {
  const auto corpus = small_corpus();
  SweepOptions opt{{TransformId::LCT, TransformId::DWT97, TransformId::DST7}, {15, 75}, Subsampling::S420, 1};
  const std::string one = curves_csv(rd_sweep(corpus, opt).curves);
  for (unsigned threads : {2u, 3u, 8u}) {
    opt.threads = threads;
    EXPECT_EQ(curves_csv(rd_sweep(corpus, opt).curves), one) << threads;
  }
}

TEST(Sweep, RejectsEmptyCorpus) {
  EXPECT_THROW(rd_sweep({}, SweepOptions{{TransformId::DCT}, {50}}), InvalidArgument);
}

TEST(Corpus, LoadsSortedAndReportsBadFiles) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "jtx_corpus_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_image_file((dir / "b.pgm").string(), Image::blank(3, 2, ColorSpace::Gray));
  write_image_file((dir / "a.ppm").string(), Image::blank(2, 2, ColorSpace::Rgb));
  write_file((dir / "c.ppm").string(), std::vector<std::uint8_t>{'P', '6'});
  write_file((dir / "notes.txt").string(), std::vector<std::uint8_t>{'x'});
  const auto load = load_corpus(dir.string());
  ASSERT_EQ(load.images.size(), 2u);
  EXPECT_EQ(load.images[0].name, "a.ppm");
  EXPECT_EQ(load.images[1].name, "b.pgm");
  ASSERT_EQ(load.errors.size(), 1u);
  EXPECT_NE(load.errors[0].find("c.ppm"), std::string::npos);
  fs::remove_all(dir);
  EXPECT_THROW(load_corpus((dir / "missing").string()), Error);
}

TEST(Corpus, BundledImagesLoad) {
  const auto load = load_corpus(JTX_CORPUS_DIR);
  EXPECT_TRUE(load.errors.empty());
  EXPECT_GE(load.images.size(), 8u);
  for (const auto& img : load.images) EXPECT_EQ(img.image.space, ColorSpace::Rgb) << img.name;
}

TEST(Montage, LayoutAndTiles) {
  const Image m = basis_montage(TransformId::DCT);
  EXPECT_EQ(m.width, 71);
  EXPECT_EQ(m.height, 71);
  EXPECT_EQ(m.space, ColorSpace::Gray);
  const auto& p = m.planes[0];
  // Gutters.
  EXPECT_EQ(p(8, 3), 255);
  EXPECT_EQ(p(40, 17), 255);
  // DC tile is uniform gray.
  EXPECT_EQ(p.block(0, 0, 8, 8).minCoeff(), 128);
  EXPECT_EQ(p.block(0, 0, 8, 8).maxCoeff(), 128);
  // Other tiles span the full range.
  EXPECT_EQ(p.block(9, 18, 8, 8).minCoeff(), 0);
  EXPECT_EQ(p.block(9, 18, 8, 8).maxCoeff(), 255);
  EXPECT_EQ(save_ppm(basis_montage(TransformId::DCT)), save_ppm(m));
}

TEST(Montage, WalshTilesHaveTwoLevels) {
  const Image montage = basis_montage(TransformId::WHT);
  const auto& p = montage.planes[0];
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n < 8; ++n) {
      if (m == 0 && n == 0) continue;
      std::set<int> levels;
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) levels.insert(p(m * 9 + r, n * 9 + c));
      EXPECT_EQ(levels, (std::set<int>{0, 255})) << m << "," << n;
    }
}

TEST(Montage, RejectsPlaneTransforms) { EXPECT_THROW(basis_montage(TransformId::LCT), InvalidArgument); }
