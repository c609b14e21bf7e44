#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "jtx/blockxf.hpp"
#include "jtx/error.hpp"
#include "jtx/pixmap.hpp"

namespace jtx {

enum class Wavelet { CDF53, CDF97 };
enum class LiftKind { Predict, Update };
enum class Direction { Forward, Inverse };

struct LiftStep {
  LiftKind kind;
  double coef;
};

/// Lifting factorization of a biorthogonal wavelet. After the steps the
/// approximations are multiplied by zeta and the details divided by it.
template <typename Scalar>
struct LiftingSpec {
  Wavelet wavelet;
  std::vector<LiftStep> steps;
  Scalar zeta;
};

/// CDF 5/3: predict -1/2, update 1/4. zeta = sqrt(2) gives both bands unit
/// gain in the orthonormal sense (DC gain sqrt(2) per level), like CDF 9/7.
template <typename Scalar>
LiftingSpec<Scalar> cdf53() {
  return {Wavelet::CDF53, {{LiftKind::Predict, -0.5}, {LiftKind::Update, 0.25}}, std::numbers::sqrt2_v<Scalar>};
}

template <typename Scalar>
LiftingSpec<Scalar> cdf97() {
  return {Wavelet::CDF97,
          {{LiftKind::Predict, -1.5861343420693648},
           {LiftKind::Update, -0.0529801185718856},
           {LiftKind::Predict, 0.8829110755411875},
           {LiftKind::Update, 0.4435068520511142}},
          Scalar(1.1496043988602418)};
}

/// 3-bit bit reversal: 0 1 2 3 4 5 6 7 -> 0 4 2 6 1 5 3 7.
constexpr int bit_reverse3(int v) { return ((v & 1) << 2) | (v & 2) | ((v >> 2) & 1); }

/// One lifting pass over a (possibly strided) sequence, in place. Even
/// positions carry approximations and odd positions details. Boundaries use
/// whole-sample symmetric extension.
///
/// Takes the signal by const reference so that Eigen::Map temporaries can be
/// passed directly.
template <typename Derived>
void lift_1d(const Eigen::MatrixBase<Derived>& signal_, const LiftingSpec<typename Derived::Scalar>& spec,
             Direction direction) {
  using Scalar = typename Derived::Scalar;
  auto& x = const_cast<Eigen::MatrixBase<Derived>&>(signal_);
  const Index n = x.size();
  if (n < 2 || n % 2 != 0) throw InvalidArgument("lift_1d: segment length must be even and at least 2");
  const Index half = n / 2;

  auto s = [&](Index i) -> Scalar& { return x(2 * i); };
  auto d = [&](Index i) -> Scalar& { return x(2 * i + 1); };

  auto apply = [&](const LiftStep& step, Scalar sign) {
    const Scalar c = sign * Scalar(step.coef);
    if (step.kind == LiftKind::Predict) {
      for (Index i = 0; i < half; ++i) {
        const Scalar right = i + 1 < half ? s(i + 1) : s(i);
        d(i) += c * (s(i) + right);
      }
    } else {
      for (Index i = 0; i < half; ++i) {
        const Scalar left = i > 0 ? d(i - 1) : d(i);
        s(i) += c * (left + d(i));
      }
    }
  };

  if (direction == Direction::Forward) {
    for (const auto& step : spec.steps) apply(step, Scalar(1));
    for (Index i = 0; i < half; ++i) {
      s(i) *= spec.zeta;
      d(i) /= spec.zeta;
    }
  } else {
    for (Index i = 0; i < half; ++i) {
      s(i) /= spec.zeta;
      d(i) *= spec.zeta;
    }
    for (auto it = spec.steps.rbegin(); it != spec.steps.rend(); ++it) apply(*it, Scalar(-1));
  }
}

inline constexpr int kWaveletLevels = 3;

namespace detail {

template <typename Scalar>
using StridedVector = Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, 0, Eigen::InnerStride<>>;

template <typename Scalar>
void require_wavelet_plane(const Plane<Scalar>& plane, const char* who) {
  if (plane.rows() % 8 != 0 || plane.cols() % 8 != 0 || plane.size() == 0)
    throw InvalidArgument(std::string(who) + ": plane dimensions must be non-zero multiples of 8");
}

template <typename Scalar>
void separable_level(Plane<Scalar>& p, Index step, const LiftingSpec<Scalar>& spec, Direction dir) {
  const Index rows = p.rows();
  const Index cols = p.cols();
  auto row_pass = [&] {
    for (Index r = 0; r < rows; r += step)
      lift_1d(StridedVector<Scalar>(&p(r, 0), cols / step, Eigen::InnerStride<>(step)), spec, dir);
  };
  auto col_pass = [&] {
    for (Index c = 0; c < cols; c += step)
      lift_1d(StridedVector<Scalar>(&p(0, c), rows / step, Eigen::InnerStride<>(step * cols)), spec, dir);
  };
  if (dir == Direction::Forward) {
    row_pass();
    col_pass();
  } else {
    col_pass();
    row_pass();
  }
}

// Whole-sample reflection of a lattice coordinate one step outside [0, limit).
inline Index reflect(Index v, Index limit, Index step) {
  if (v < 0) return -v;
  if (v >= limit) return 2 * (limit - step) - v;
  return v;
}

// One quincunx lifting pass on the lattice of spacing `step`.
//   axial:    predicted = (y/step + x/step) odd,   neighbours (0,+-1), (+-1,0)
//   diagonal: predicted = y/step, x/step both odd, neighbours (+-1,+-1)
// Updated samples are the complementary colour of the pass' sub-lattice.
template <typename Scalar>
void quincunx_pass(Plane<Scalar>& p, Index step, bool diagonal, const LiftingSpec<Scalar>& spec, Direction dir) {
  const Index rows = p.rows();
  const Index cols = p.cols();
  static constexpr std::array<std::array<int, 2>, 4> kAxial = {{{0, -1}, {0, 1}, {-1, 0}, {1, 0}}};
  static constexpr std::array<std::array<int, 2>, 4> kDiagonal = {{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}}};
  const auto& offsets = diagonal ? kDiagonal : kAxial;

  auto is_predicted = [&](Index y, Index x) {
    const Index i = y / step;
    const Index j = x / step;
    return diagonal ? (i % 2 == 1 && j % 2 == 1) : ((i + j) % 2 == 1);
  };
  auto is_updated = [&](Index y, Index x) {
    const Index i = y / step;
    const Index j = x / step;
    return diagonal ? (i % 2 == 0 && j % 2 == 0) : ((i + j) % 2 == 0);
  };
  auto neighbour_sum = [&](Index y, Index x) {
    Scalar sum = 0;
    for (const auto& o : offsets)
      sum += p(reflect(y + o[0] * step, rows, step), reflect(x + o[1] * step, cols, step));
    return sum;
  };
  auto apply = [&](const LiftStep& s, Scalar sign) {
    // Each of the four neighbours carries half of the 1-D two-tap weight.
    const Scalar c = sign * Scalar(s.coef) / 2;
    const bool predict = s.kind == LiftKind::Predict;
    for (Index y = 0; y < rows; y += step)
      for (Index x = 0; x < cols; x += step)
        if (predict ? is_predicted(y, x) : is_updated(y, x)) p(y, x) += c * neighbour_sum(y, x);
  };
  auto scale = [&](bool forward) {
    for (Index y = 0; y < rows; y += step) {
      for (Index x = 0; x < cols; x += step) {
        if (is_updated(y, x))
          p(y, x) = forward ? p(y, x) * spec.zeta : p(y, x) / spec.zeta;
        else if (is_predicted(y, x))
          p(y, x) = forward ? p(y, x) / spec.zeta : p(y, x) * spec.zeta;
      }
    }
  };

  if (dir == Direction::Forward) {
    for (const auto& s : spec.steps) apply(s, Scalar(1));
    scale(true);
  } else {
    scale(false);
    for (auto it = spec.steps.rbegin(); it != spec.steps.rend(); ++it) apply(*it, Scalar(-1));
  }
}

}  // namespace detail

/// Permute rows and columns inside every 8x8 tile by 3-bit bit reversal.
/// Self-inverse: the same call packs and unpacks.
template <typename Scalar>
Plane<Scalar> bit_reverse_blocks(const Plane<Scalar>& plane) {
  detail::require_wavelet_plane(plane, "bit_reverse_blocks");
  Plane<Scalar> out(plane.rows(), plane.cols());
  for (Index r = 0; r < plane.rows(); ++r) {
    const Index rr = (r & ~Index(7)) | bit_reverse3(static_cast<int>(r & 7));
    for (Index c = 0; c < plane.cols(); ++c) {
      const Index cc = (c & ~Index(7)) | bit_reverse3(static_cast<int>(c & 7));
      out(rr, cc) = plane(r, c);
    }
  }
  return out;
}

/// Three dyadic levels of separable lifting (strides 1, 2, 4), packed so
/// each 8x8 tile holds LL3 at (0,0) and finer details at higher indices.
template <typename Scalar>
Plane<Scalar> dwt2_forward(const Plane<Scalar>& plane, const LiftingSpec<Scalar>& spec) {
  detail::require_wavelet_plane(plane, "dwt2_forward");
  Plane<Scalar> p = plane;
  for (Index step = 1; step < 8; step *= 2) detail::separable_level(p, step, spec, Direction::Forward);
  return bit_reverse_blocks(p);
}

template <typename Scalar>
Plane<Scalar> dwt2_inverse(const Plane<Scalar>& coefs, const LiftingSpec<Scalar>& spec) {
  detail::require_wavelet_plane(coefs, "dwt2_inverse");
  Plane<Scalar> p = bit_reverse_blocks(coefs);
  for (Index step = 4; step >= 1; step /= 2) detail::separable_level(p, step, spec, Direction::Inverse);
  return p;
}

/// Red-black (quincunx) wavelet: per level an axial pass then a diagonal
/// pass, each a full lifting sequence with scaling. Same packing as the
/// separable transform.
template <typename Scalar>
Plane<Scalar> rb_forward(const Plane<Scalar>& plane, const LiftingSpec<Scalar>& spec) {
  detail::require_wavelet_plane(plane, "rb_forward");
  Plane<Scalar> p = plane;
  for (Index step = 1; step < 8; step *= 2) {
    detail::quincunx_pass(p, step, false, spec, Direction::Forward);
    detail::quincunx_pass(p, step, true, spec, Direction::Forward);
  }
  return bit_reverse_blocks(p);
}

template <typename Scalar>
Plane<Scalar> rb_inverse(const Plane<Scalar>& coefs, const LiftingSpec<Scalar>& spec) {
  detail::require_wavelet_plane(coefs, "rb_inverse");
  Plane<Scalar> p = bit_reverse_blocks(coefs);
  for (Index step = 4; step >= 1; step /= 2) {
    detail::quincunx_pass(p, step, true, spec, Direction::Inverse);
    detail::quincunx_pass(p, step, false, spec, Direction::Inverse);
  }
  return p;
}

/// Lifting spec for a wavelet TransformId (DWT53/DWT97/RB53/RB97).
const LiftingSpec<double>& lifting_spec(TransformId id);

}  // namespace jtx
