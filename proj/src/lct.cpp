#include "jtx/lct.hpp"

#include "jtx/blockxf.hpp"
#include "jtx/error.hpp"

namespace jtx {

namespace {

// For pair n: p = b(n), q = b(-n).
//   fold:   f- = (p f(-n) - q f(n)) / (p - q),  f+ = (p f(n) - q f(-n)) / (p - q)
//   unfold: f(-n) = (p f- + q f+) / (p + q),   f(n) = (p f+ + q f-) / (p + q)
struct PairWeights {
  std::array<double, Bell<double>::kRadius + 1> p{};
  std::array<double, Bell<double>::kRadius + 1> q{};
};

const PairWeights& pair_weights() {
  static const PairWeights weights = [] {
    PairWeights w;
    for (int n = 1; n <= Bell<double>::kRadius; ++n) {
      w.p[n] = Bell<double>::weight(n);
      w.q[n] = Bell<double>::weight(-n);
      if (std::abs(w.p[n] - w.q[n]) < 1e-6 || std::abs(w.p[n] + w.q[n]) < 1e-6)
        throw Error("lct: singular folding pair");
    }
    return w;
  }();
  return weights;
}

enum class Axis { Rows, Cols };

template <bool Forward>
void fold_axis(PlaneXd& plane, Axis axis) {
  const PairWeights& w = pair_weights();
  const Index lines = axis == Axis::Rows ? plane.rows() : plane.cols();
  const Index length = axis == Axis::Rows ? plane.cols() : plane.rows();
  for (Index line = 0; line < lines; ++line) {
    auto at = [&](Index i) -> double& { return axis == Axis::Rows ? plane(line, i) : plane(i, line); };
    for (Index boundary = 8; boundary < length; boundary += 8) {
      for (int n = 1; n <= Bell<double>::kRadius; ++n) {
        double& left = at(boundary - n);
        double& right = at(boundary + n - 1);
        const double p = w.p[n];
        const double q = w.q[n];
        const double l = left;
        const double r = right;
        if constexpr (Forward) {
          left = (p * l - q * r) / (p - q);
          right = (p * r - q * l) / (p - q);
        } else {
          left = (p * l + q * r) / (p + q);
          right = (p * r + q * l) / (p + q);
        }
      }
    }
  }
}

}  // namespace

PlaneXd fold_plane(const PlaneXd& plane) {
  require_block_multiple(plane, "fold_plane");
  PlaneXd out = plane;
  fold_axis<true>(out, Axis::Rows);
  fold_axis<true>(out, Axis::Cols);
  return out;
}

PlaneXd unfold_plane(const PlaneXd& plane) {
  require_block_multiple(plane, "unfold_plane");
  PlaneXd out = plane;
  fold_axis<false>(out, Axis::Cols);
  fold_axis<false>(out, Axis::Rows);
  return out;
}

PlaneXd lct_forward(const PlaneXd& plane) { return blockwise_forward(TransformId::DCT, fold_plane(plane)); }

PlaneXd lct_inverse(const PlaneXd& coefs) { return unfold_plane(blockwise_inverse(TransformId::DCT, coefs)); }

}  // namespace jtx
