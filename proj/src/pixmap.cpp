#include "jtx/pixmap.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

#include "jtx/error.hpp"

namespace jtx {

Image Image::blank(Index width, Index height, ColorSpace space) {
  Image image;
  image.width = width;
  image.height = height;
  image.space = space;
  const int n = space == ColorSpace::Gray ? 1 : 3;
  for (int i = 0; i < n; ++i) image.planes.push_back(SamplePlane::Zero(height, width));
  return image;
}

bool Image::operator==(const Image& other) const {
  if (width != other.width || height != other.height || space != other.space ||
      planes.size() != other.planes.size())
    return false;
  for (std::size_t i = 0; i < planes.size(); ++i)
    if (planes[i] != other.planes[i]) return false;
  return true;
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number(const char* field) {
    skip_space();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 30)) throw ParseError(std::string("ppm: ") + field + " out of range");
      ++digits;
    }
    if (digits == 0) throw ParseError(std::string("ppm: missing or malformed ") + field);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw ParseError("ppm: missing whitespace after maxval");
    ++pos_;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image load_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
    throw ParseError("ppm: bad magic (expected P5 or P6)");
  const bool color = bytes[1] == '6';
  HeaderReader reader(bytes);
  reader.advance(2);
  const long width = reader.number("width");
  const long height = reader.number("height");
  const long maxval = reader.number("maxval");
  if (width <= 0) throw ParseError("ppm: invalid width");
  if (height <= 0) throw ParseError("ppm: invalid height");
  if (maxval != 255) throw ParseError("ppm: unsupported maxval " + std::to_string(maxval));
  reader.single_space();

  const std::size_t channels = color ? 3 : 1;
  const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels;
  if (bytes.size() - reader.pos() < need) throw ParseError("ppm: truncated payload");

  Image image = Image::blank(width, height, color ? ColorSpace::Rgb : ColorSpace::Gray);
  const std::uint8_t* src = bytes.data() + reader.pos();
  for (Index r = 0; r < height; ++r)
    for (Index c = 0; c < width; ++c)
      for (std::size_t ch = 0; ch < channels; ++ch) image.planes[ch](r, c) = *src++;
  return image;
}

std::vector<std::uint8_t> save_ppm(const Image& image) {
  if (image.space == ColorSpace::YCbCr)
    throw InvalidArgument("ppm: image is YCbCr, convert to RGB first");
  const bool color = image.space == ColorSpace::Rgb;
  const std::string header = std::string(color ? "P6" : "P5") + "\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + static_cast<std::size_t>(image.width * image.height * image.channels()));
  for (Index r = 0; r < image.height; ++r)
    for (Index c = 0; c < image.width; ++c)
      for (const auto& plane : image.planes) out.push_back(plane(r, c));
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path);
}

Image read_image_file(const std::string& path) {
  const auto bytes = read_file(path);
  try {
    return load_ppm(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_image_file(const std::string& path, const Image& image) { write_file(path, save_ppm(image)); }

namespace {

std::uint8_t round_clamp(double v) { return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0)); }

}  // namespace

Image rgb_to_ycbcr(const Image& image) {
  if (image.space != ColorSpace::Rgb) throw InvalidArgument("rgb_to_ycbcr: input is not RGB");
  Image out = Image::blank(image.width, image.height, ColorSpace::YCbCr);
  for (Index r = 0; r < image.height; ++r) {
    for (Index c = 0; c < image.width; ++c) {
      const double red = image.planes[0](r, c);
      const double green = image.planes[1](r, c);
      const double blue = image.planes[2](r, c);
      out.planes[0](r, c) = round_clamp(0.299 * red + 0.587 * green + 0.114 * blue);
      out.planes[1](r, c) = round_clamp(128.0 - 0.168736 * red - 0.331264 * green + 0.5 * blue);
      out.planes[2](r, c) = round_clamp(128.0 + 0.5 * red - 0.418688 * green - 0.081312 * blue);
    }
  }
  return out;
}

Image ycbcr_to_rgb(const Image& image) {
  if (image.space != ColorSpace::YCbCr) throw InvalidArgument("ycbcr_to_rgb: input is not YCbCr");
  Image out = Image::blank(image.width, image.height, ColorSpace::Rgb);
  for (Index r = 0; r < image.height; ++r) {
    for (Index c = 0; c < image.width; ++c) {
      const double y = image.planes[0](r, c);
      const double cb = image.planes[1](r, c) - 128.0;
      const double cr = image.planes[2](r, c) - 128.0;
      out.planes[0](r, c) = round_clamp(y + 1.402 * cr);
      out.planes[1](r, c) = round_clamp(y - 0.344136 * cb - 0.714136 * cr);
      out.planes[2](r, c) = round_clamp(y + 1.772 * cb);
    }
  }
  return out;
}

PlaneXd to_plane(const SamplePlane& samples) { return samples.cast<double>(); }

}  // namespace jtx
