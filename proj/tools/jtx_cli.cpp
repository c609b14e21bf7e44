// jtx: encode / decode / bench / basis front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jtx/bench.hpp"
#include "jtx/codec.hpp"
#include "jtx/error.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

jtx::TransformId transform_arg(const std::string& name) {
  const auto id = jtx::parse_transform(name);
  if (!id) throw UsageError("unknown transform '" + name + "'");
  return *id;
}

std::vector<jtx::TransformId> transform_list(const std::string& list) {
  std::vector<jtx::TransformId> out;
  for (const auto& name : split(list)) out.push_back(transform_arg(name));
  if (out.empty()) throw UsageError("empty transform list");
  return out;
}

std::vector<int> quality_list(const std::string& list) {
  std::vector<int> out;
  for (const auto& item : split(list)) {
    std::size_t used = 0;
    int q = 0;
    try {
      q = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || q < 1 || q > 100) throw UsageError("invalid quality '" + item + "'");
    out.push_back(q);
  }
  if (out.empty()) throw UsageError("empty quality list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transform-pluggable JPEG-style image codec"};
  app.require_subcommand(1);

  std::string input, output, transform = "dct", subsample = "444";
  int quality = 75;
  auto* enc = app.add_subcommand("encode", "Compress a PPM/PGM image into a .jtx container");
  enc->add_option("-i,--input", input, "Input PPM/PGM")->required();
  enc->add_option("-o,--output", output, "Output .jtx")->required();
  enc->add_option("--transform", transform, "dct|dst7|dht|wht|dcht|lct|dwt53|dwt97|rb53|rb97");
  enc->add_option("--quality", quality, "1..100")->check(CLI::Range(1, 100));
  enc->add_option("--subsample", subsample, "444 or 420")->check(CLI::IsMember({"444", "420"}));

  auto* dec = app.add_subcommand("decode", "Decompress a .jtx container to PPM/PGM");
  dec->add_option("-i,--input", input, "Input .jtx")->required();
  dec->add_option("-o,--output", output, "Output PPM/PGM")->required();

  std::string corpus, transforms = "dct,dst7,dht,wht,dcht,lct,dwt53,dwt97,rb53,rb97",
                      qualities = "10,20,30,40,50,60,70,80,90,95";
  unsigned threads = 0;
  auto* bench = app.add_subcommand("bench", "Rate-distortion sweep over a directory of images");
  bench->add_option("--corpus", corpus, "Directory of PPM/PGM images")->required();
  bench->add_option("--transforms", transforms, "Comma-separated transform names");
  bench->add_option("--qualities", qualities, "Comma-separated qualities");
  bench->add_option("--subsample", subsample, "444 or 420")->check(CLI::IsMember({"444", "420"}));
  bench->add_option("--threads", threads, "Worker threads (0 = all cores)");
  bench->add_option("-o,--output", output, "CSV output path")->required();

  auto* basis = app.add_subcommand("basis", "Write basis-image montages as PGM");
  std::string basis_list = "dct,dcht,dht,wht";
  basis->add_option("--transforms", basis_list, "Comma-separated block transforms");
  basis->add_option("-o,--output", output, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  const auto mode = subsample == "420" ? jtx::Subsampling::S420 : jtx::Subsampling::S444;
  try {
    if (*enc) {
      const jtx::EncodeParams params{transform_arg(transform), quality, mode};
      const auto bytes = jtx::encode(jtx::read_image_file(input), params);
      jtx::write_file(output, bytes);
    } else if (*dec) {
      jtx::write_image_file(output, jtx::decode(jtx::read_file(input)));
    } else if (*bench) {
      jtx::SweepOptions options{transform_list(transforms), quality_list(qualities), mode, threads};
      const auto loaded = jtx::load_corpus(corpus);
      for (const auto& err : loaded.errors) std::fprintf(stderr, "skipped: %s\n", err.c_str());
      if (loaded.images.empty()) {
        std::fprintf(stderr, "error: no readable images in %s\n", corpus.c_str());
        return kDataError;
      }
      const auto result = jtx::rd_sweep(loaded.images, options);
      const std::string csv = jtx::curves_csv(result.curves);
      jtx::write_file(output, {reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()});
    } else if (*basis) {
      std::filesystem::create_directories(output);
      for (const auto id : transform_list(basis_list)) {
        if (!jtx::is_matrix_backed(id)) throw UsageError(std::string(jtx::transform_name(id)) + " has no 8x8 basis");
        const auto path = std::filesystem::path(output) / (std::string(jtx::transform_name(id)) + "_basis.pgm");
        jtx::write_image_file(path.string(), jtx::basis_montage(id));
      }
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDataError;
  }
  return 0;
}
