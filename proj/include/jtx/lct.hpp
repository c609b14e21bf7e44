#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "jtx/pixmap.hpp"

namespace jtx {

/// Smooth cut-off rising from 0 (x < -1) to 1 (x > 1) through (1 + sin(pi x / 2)) / 2.
template <typename Scalar>
Scalar bell_beta(Scalar x) {
  if (x < Scalar(-1)) return Scalar(0);
  if (x > Scalar(1)) return Scalar(1);
  return (Scalar(1) + std::sin(std::numbers::pi_v<Scalar> * x / 2)) / 2;
}

/// Bell weights b(n) = beta((2n + 1) / 8) for the four sample pairs folded on
/// each side of a block boundary.
template <typename Scalar>
struct Bell {
  static constexpr int kRadius = 4;

  // Pair n (1..4) couples f(-n) = plane[B - n] with f(n) = plane[B + n - 1].
  static Scalar weight(int n) { return bell_beta(Scalar(2 * n + 1) / Scalar(8)); }
};

/// Fold every interior 8x8 block boundary, rows first then columns. The image
/// border is left untouched.
PlaneXd fold_plane(const PlaneXd& plane);
PlaneXd unfold_plane(const PlaneXd& plane);

/// Blockwise DCT of the folded plane.
PlaneXd lct_forward(const PlaneXd& plane);
PlaneXd lct_inverse(const PlaneXd& coefs);

}  // namespace jtx
