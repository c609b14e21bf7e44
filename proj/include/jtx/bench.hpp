#pragma once

#include <string>
#include <vector>

#include "jtx/blockxf.hpp"
#include "jtx/codec.hpp"
#include "jtx/pixmap.hpp"

namespace jtx {

/// 10 log10(255^2 / MSE), MSE pooled over every sample of every channel.
/// Identical images give +infinity.
double psnr(const Image& a, const Image& b);

struct RdPoint {
  TransformId transform = TransformId::DCT;
  int quality = 0;
  double bpp = 0;   // container bits / pixel count (header included)
  double psnr = 0;  // dB, +inf for lossless
};

/// Corpus-averaged points of one transform, sorted by bpp ascending.
struct RdCurve {
  TransformId transform = TransformId::DCT;
  std::vector<RdPoint> points;
};

/// Encode, decode and measure one image.
RdPoint measure(const Image& image, const EncodeParams& params);

struct NamedImage {
  std::string name;
  Image image;
};

struct CorpusLoad {
  std::vector<NamedImage> images;  // sorted by file name
  std::vector<std::string> errors;
};

/// Every *.ppm / *.pgm file in `dir`. Unreadable entries are reported in
/// `errors` and skipped.
CorpusLoad load_corpus(const std::string& dir);

struct SweepOptions {
  std::vector<TransformId> transforms;
  std::vector<int> qualities;
  Subsampling subsampling = Subsampling::S444;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepResult {
  std::vector<RdCurve> curves;  // one per requested transform, in request order
  // per_image[t][q][i]: transform t, quality q, image i (request / corpus order).
  std::vector<std::vector<std::vector<RdPoint>>> per_image;
};

SweepResult rd_sweep(const std::vector<NamedImage>& corpus, const SweepOptions& options);

/// `transform,quality,bpp,psnr` rows ordered by (transform id, quality).
std::string curves_csv(const std::vector<RdCurve>& curves);

/// Linear interpolation of PSNR at `bpp`; throws when bpp is outside the
/// curve's rate span.
double interpolate_at_rate(const RdCurve& curve, double bpp);

/// 8x8 grid of basis images (DC top-left), one sample per pixel, tiles
/// separated by 1-pixel gutters, each tile stretched to [0, 255].
Image basis_montage(TransformId id);

}  // namespace jtx
