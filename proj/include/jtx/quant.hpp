#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include <Eigen/Core>

#include "jtx/blockxf.hpp"
#include "jtx/error.hpp"

namespace jtx {

using IntBlock8 = Eigen::Matrix<int, 8, 8, Eigen::RowMajor>;

enum class TableRole : std::uint8_t { Luma, Chroma };

/// 8x8 quantization divisors in [1, 255], row-major, DC at (0,0).
struct QuantTable {
  IntBlock8 q;
  TableRole role = TableRole::Luma;

  bool operator==(const QuantTable&) const = default;
};

/// The example luminance / chrominance tables that ship with most JPEG encoders.
std::pair<QuantTable, QuantTable> default_tables();

/// Quality 1..100 using the 5000/q (q < 50) or 200 - 2q scaling law.
QuantTable scale_table(const QuantTable& table, int quality);

/// Largest magnitude a quantized coefficient may take (15-bit category).
inline constexpr int kMaxQuantized = (1 << 15) - 1;

/// round(X / Q), ties away from zero.
template <typename Derived>
IntBlock8 quantize(const Eigen::MatrixBase<Derived>& block, const QuantTable& table) {
  using Scalar = typename Derived::Scalar;
  IntBlock8 out;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      const Scalar x = block(r, c);
      if (!std::isfinite(x)) throw InvalidArgument("quantize: non-finite coefficient");
      const Scalar v = std::round(x / Scalar(table.q(r, c)));
      if (std::abs(v) > Scalar(kMaxQuantized)) throw OverflowError("quantize: coefficient overflow");
      out(r, c) = static_cast<int>(v);
    }
  }
  return out;
}

template <typename Scalar = double>
Block8<Scalar> dequantize(const IntBlock8& block, const QuantTable& table) {
  return block.cwiseProduct(table.q).cast<Scalar>();
}

}  // namespace jtx
