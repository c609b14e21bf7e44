#include "jtx/blockxf.hpp"

#include <string>

namespace jtx {

namespace {

constexpr std::array<std::string_view, 10> kNames = {"dct", "dst7", "dht", "wht", "dcht",
                                                     "lct", "dwt53", "dwt97", "rb53", "rb97"};

}  // namespace

std::string_view transform_name(TransformId id) {
  const auto index = static_cast<std::size_t>(id);
  return index < kNames.size() ? kNames[index] : std::string_view("unknown");
}

std::optional<TransformId> parse_transform(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<TransformId>(i);
  return std::nullopt;
}

std::optional<TransformId> transform_from_byte(std::uint8_t byte) {
  if (byte < kNames.size()) return static_cast<TransformId>(byte);
  return std::nullopt;
}

const Matrix8d& transform_matrix(TransformId id) {
  static const std::array<Matrix8d, 5> matrices = {
      build_matrix<double>(TransformId::DCT), build_matrix<double>(TransformId::DST7),
      build_matrix<double>(TransformId::DHT), build_matrix<double>(TransformId::WHT),
      build_matrix<double>(TransformId::DCHT)};
  if (!is_matrix_backed(id))
    throw InvalidArgument(std::string(transform_name(id)) + " is not a block-matrix transform");
  return matrices[static_cast<std::size_t>(id)];
}

Block8d basis_image(TransformId id, int m, int n) {
  if (m < 0 || m > 7 || n < 0 || n > 7) throw InvalidArgument("basis_image: index out of range");
  const Matrix8d& mat = transform_matrix(id);
  return mat.row(m).transpose() * mat.row(n);
}

void require_block_multiple(const PlaneXd& plane, const char* who) {
  if (plane.rows() % 8 != 0 || plane.cols() % 8 != 0)
    throw InvalidArgument(std::string(who) + ": plane dimensions must be multiples of 8");
}

PlaneXd blockwise_forward(TransformId id, const PlaneXd& plane) {
  require_block_multiple(plane, "blockwise_forward");
  const Matrix8d& m = transform_matrix(id);
  PlaneXd out(plane.rows(), plane.cols());
  for (Index r = 0; r < plane.rows(); r += 8)
    for (Index c = 0; c < plane.cols(); c += 8)
      out.block<8, 8>(r, c) = forward_block(m, plane.block<8, 8>(r, c));
  return out;
}

PlaneXd blockwise_inverse(TransformId id, const PlaneXd& coefs) {
  require_block_multiple(coefs, "blockwise_inverse");
  const Matrix8d& m = transform_matrix(id);
  PlaneXd out(coefs.rows(), coefs.cols());
  for (Index r = 0; r < coefs.rows(); r += 8)
    for (Index c = 0; c < coefs.cols(); c += 8)
      out.block<8, 8>(r, c) = inverse_block(m, coefs.block<8, 8>(r, c));
  return out;
}

}  // namespace jtx
