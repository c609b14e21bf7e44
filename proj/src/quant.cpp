#include "jtx/quant.hpp"

#include <algorithm>

namespace jtx {

std::pair<QuantTable, QuantTable> default_tables() {
  QuantTable luma;
  luma.role = TableRole::Luma;
  luma.q << 16, 11, 10, 16, 24, 40, 51, 61,
            12, 12, 14, 19, 26, 58, 60, 55,
            14, 13, 16, 24, 40, 57, 69, 56,
            14, 17, 22, 29, 51, 87, 80, 62,
            18, 22, 37, 56, 68, 109, 103, 77,
            24, 35, 55, 64, 81, 104, 113, 92,
            49, 64, 78, 87, 103, 121, 120, 101,
            72, 92, 95, 98, 112, 100, 103, 99;

  QuantTable chroma;
  chroma.role = TableRole::Chroma;
  chroma.q.setConstant(99);
  chroma.q.topLeftCorner<4, 4>() << 17, 18, 24, 47,
                                    18, 21, 26, 66,
                                    24, 26, 56, 99,
                                    47, 66, 99, 99;
  return {luma, chroma};
}

QuantTable scale_table(const QuantTable& table, int quality) {
  if (quality < 1 || quality > 100) throw InvalidArgument("scale_table: quality must be in 1..100");
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  QuantTable out = table;
  out.q = table.q.unaryExpr([scale](int q) {
    // Integer form of round(q * scale / 100) for non-negative operands.
    const int scaled = (q * scale + 50) / 100;
    return std::clamp(scaled, 1, 255);
  });
  return out;
}

}  // namespace jtx
