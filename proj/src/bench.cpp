#include "jtx/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <thread>

#include "jtx/error.hpp"

namespace jtx {

double psnr(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height || a.channels() != b.channels())
    throw InvalidArgument("psnr: image dimensions differ");
  double sse = 0;
  double count = 0;
  for (Index ch = 0; ch < a.channels(); ++ch) {
    const auto diff = a.planes[ch].cast<double>() - b.planes[ch].cast<double>();
    sse += diff.squaredNorm();
    count += static_cast<double>(diff.size());
  }
  if (sse == 0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / (sse / count));
}

RdPoint measure(const Image& image, const EncodeParams& params) {
  const auto bytes = encode(image, params);
  const Image decoded = decode(bytes);
  RdPoint p;
  p.transform = params.transform;
  p.quality = params.quality;
  p.bpp = 8.0 * static_cast<double>(bytes.size()) / static_cast<double>(image.width * image.height);
  p.psnr = psnr(image, decoded);
  return p;
}

CorpusLoad load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  CorpusLoad out;
  std::vector<fs::path> paths;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const auto ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".ppm" || ext == ".pgm")) paths.push_back(entry.path());
  }
  if (ec) throw Error("cannot read corpus directory " + dir + ": " + ec.message());
  std::sort(paths.begin(), paths.end(),
            [](const fs::path& x, const fs::path& y) { return x.filename().string() < y.filename().string(); });
  for (const auto& p : paths) {
    try {
      out.images.push_back({p.filename().string(), read_image_file(p.string())});
    } catch (const Error& e) {
      out.errors.push_back(e.what());
    }
  }
  return out;
}

SweepResult rd_sweep(const std::vector<NamedImage>& corpus, const SweepOptions& options) {
  if (corpus.empty()) throw InvalidArgument("rd_sweep: empty corpus");
  const std::size_t nt = options.transforms.size();
  const std::size_t nq = options.qualities.size();
  const std::size_t ni = corpus.size();

  SweepResult result;
  result.per_image.assign(nt, std::vector<std::vector<RdPoint>>(nq, std::vector<RdPoint>(ni)));

  const std::size_t tasks = nt * nq * ni;
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_task = tasks;

  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      const std::size_t t = task / (nq * ni);
      const std::size_t q = (task / ni) % nq;
      const std::size_t i = task % ni;
      try {
        const EncodeParams params{options.transforms[t], options.qualities[q], options.subsampling};
        result.per_image[t][q][i] = measure(corpus[i].image, params);
      } catch (...) {
        // Keep the lowest-numbered failure so the reported error does not
        // depend on scheduling.
        std::lock_guard lock(error_mutex);
        if (task < first_error_task) {
          first_error_task = task;
          first_error = std::current_exception();
        }
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  for (std::size_t t = 0; t < nt; ++t) {
    RdCurve curve;
    curve.transform = options.transforms[t];
    for (std::size_t q = 0; q < nq; ++q) {
      RdPoint mean;
      mean.transform = curve.transform;
      mean.quality = options.qualities[q];
      for (const RdPoint& p : result.per_image[t][q]) {
        mean.bpp += p.bpp;
        mean.psnr += p.psnr;
      }
      mean.bpp /= static_cast<double>(ni);
      mean.psnr /= static_cast<double>(ni);
      curve.points.push_back(mean);
    }
    std::stable_sort(curve.points.begin(), curve.points.end(),
                     [](const RdPoint& a, const RdPoint& b) { return a.bpp < b.bpp; });
    result.curves.push_back(std::move(curve));
  }
  return result;
}

std::string curves_csv(const std::vector<RdCurve>& curves) {
  std::vector<RdPoint> rows;
  for (const auto& c : curves) rows.insert(rows.end(), c.points.begin(), c.points.end());
  std::stable_sort(rows.begin(), rows.end(), [](const RdPoint& a, const RdPoint& b) {
    if (a.transform != b.transform) return a.transform < b.transform;
    return a.quality < b.quality;
  });
  std::string out = "transform,quality,bpp,psnr\n";
  char line[128];
  for (const RdPoint& p : rows) {
    if (std::isinf(p.psnr))
      std::snprintf(line, sizeof line, "%s,%d,%.6f,inf\n", std::string(transform_name(p.transform)).c_str(),
                    p.quality, p.bpp);
    else
      std::snprintf(line, sizeof line, "%s,%d,%.6f,%.4f\n", std::string(transform_name(p.transform)).c_str(),
                    p.quality, p.bpp, p.psnr);
    out += line;
  }
  return out;
}

double interpolate_at_rate(const RdCurve& curve, double bpp) {
  const auto& pts = curve.points;
  if (pts.empty() || bpp < pts.front().bpp || bpp > pts.back().bpp)
    throw InvalidArgument("interpolate_at_rate: " + std::to_string(bpp) + " bpp is outside the curve span");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].bpp == bpp) return pts[i].psnr;
    if (i + 1 < pts.size() && bpp < pts[i + 1].bpp) {
      const double t = (bpp - pts[i].bpp) / (pts[i + 1].bpp - pts[i].bpp);
      return pts[i].psnr + t * (pts[i + 1].psnr - pts[i].psnr);
    }
  }
  return pts.back().psnr;
}

Image basis_montage(TransformId id) {
  if (!is_matrix_backed(id)) throw InvalidArgument("basis_montage: " + std::string(transform_name(id)) +
                                                   " has no 8x8 basis");
  constexpr Index kTile = 8;
  constexpr Index kGutter = 1;
  constexpr Index kSide = 8 * kTile + 7 * kGutter;
  Image out = Image::blank(kSide, kSide, ColorSpace::Gray);
  out.planes[0].setConstant(255);
  for (int m = 0; m < 8; ++m) {
    for (int n = 0; n < 8; ++n) {
      const Block8d basis = basis_image(id, m, n);
      const double lo = basis.minCoeff();
      const double hi = basis.maxCoeff();
      const Index top = m * (kTile + kGutter);
      const Index left = n * (kTile + kGutter);
      for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
          // Flat tiles (up to rounding noise) render as mid-gray.
          const double v = hi - lo < 1e-12 ? 128.0 : 255.0 * (basis(r, c) - lo) / (hi - lo);
          out.planes[0](top + r, left + c) = static_cast<std::uint8_t>(std::lround(v));
        }
      }
    }
  }
  return out;
}

}  // namespace jtx
