#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "jtx/error.hpp"
#include "jtx/pixmap.hpp"

namespace jtx {

// Byte values are part of the container format; do not reorder.
enum class TransformId : std::uint8_t { DCT = 0, DST7, DHT, WHT, DCHT, LCT, DWT53, DWT97, RB53, RB97 };

inline constexpr std::array<TransformId, 10> kAllTransforms = {
    TransformId::DCT,  TransformId::DST7,  TransformId::DHT,   TransformId::WHT,  TransformId::DCHT,
    TransformId::LCT,  TransformId::DWT53, TransformId::DWT97, TransformId::RB53, TransformId::RB97};

std::string_view transform_name(TransformId id);
std::optional<TransformId> parse_transform(std::string_view name);
std::optional<TransformId> transform_from_byte(std::uint8_t byte);

/// True for the transforms defined by a single orthonormal 8x8 matrix.
constexpr bool is_matrix_backed(TransformId id) {
  return id == TransformId::DCT || id == TransformId::DST7 || id == TransformId::DHT || id == TransformId::WHT ||
         id == TransformId::DCHT;
}

template <typename Scalar>
using Matrix8 = Eigen::Matrix<Scalar, 8, 8, Eigen::RowMajor>;
template <typename Scalar>
using Block8 = Eigen::Matrix<Scalar, 8, 8, Eigen::RowMajor>;
using Matrix8d = Matrix8<double>;
using Block8d = Block8<double>;

namespace detail {

template <typename Scalar>
Matrix8<Scalar> normalize_rows(Matrix8<Scalar> m) {
  for (int r = 0; r < 8; ++r) m.row(r).normalize();
  return m;
}

inline int gray_code(int v) { return v ^ (v >> 1); }

inline int reverse_bits3(int v) { return ((v & 1) << 2) | (v & 2) | ((v >> 2) & 1); }

}  // namespace detail

/// DCT-II with orthonormal scaling: row m is lambda_m * cos(pi (k + 1/2) m / 8).
template <typename Scalar>
Matrix8<Scalar> dct_matrix() {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Matrix8<Scalar> m;
  for (int row = 0; row < 8; ++row) {
    const Scalar lambda = row == 0 ? std::sqrt(Scalar(1) / 8) : std::sqrt(Scalar(2) / 8);
    for (int k = 0; k < 8; ++k) m(row, k) = lambda * std::cos(pi * (k + Scalar(0.5)) * row / 8);
  }
  return m;
}

/// DST-VII: sin(pi (k + 1)(m + 1/2) / (N + 1/2)), rows scaled to unit norm.
template <typename Scalar>
Matrix8<Scalar> dst7_matrix() {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Matrix8<Scalar> m;
  for (int row = 0; row < 8; ++row)
    for (int k = 0; k < 8; ++k) m(row, k) = std::sin(pi * (k + 1) * (row + Scalar(0.5)) / Scalar(8.5));
  return detail::normalize_rows(m);
}

/// Hartley kernel cas(2 pi k m / 8) / sqrt(8); symmetric and self-inverse.
template <typename Scalar>
Matrix8<Scalar> dht_matrix() {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Matrix8<Scalar> m;
  for (int row = 0; row < 8; ++row) {
    for (int k = 0; k < 8; ++k) {
      const Scalar a = 2 * pi * k * row / 8;
      m(row, k) = (std::cos(a) + std::sin(a)) / std::sqrt(Scalar(8));
    }
  }
  return m;
}

/// Unscaled +-1 Walsh matrix in sequency order: row m has m sign changes.
inline Eigen::Matrix<int, 8, 8, Eigen::RowMajor> walsh_signs() {
  Eigen::Matrix<int, 8, 8, Eigen::RowMajor> w;
  for (int row = 0; row < 8; ++row) {
    // Natural-order Hadamard row index for sequency `row`.
    const int natural = detail::reverse_bits3(detail::gray_code(row));
    for (int k = 0; k < 8; ++k) w(row, k) = (std::popcount(static_cast<unsigned>(natural & k)) & 1) ? -1 : 1;
  }
  return w;
}

template <typename Scalar>
Matrix8<Scalar> wht_matrix() {
  return walsh_signs().cast<Scalar>() / std::sqrt(Scalar(8));
}

/// Discrete orthonormal Chebyshev polynomials on k = 0..7, generated by the
/// three-term recurrence t_p = (a1 (2k + 1 - N)) t_{p-1} + a2 t_{p-2}.
template <typename Scalar>
Matrix8<Scalar> dcht_matrix() {
  constexpr int n = 8;
  const Scalar nn = Scalar(n) * n;
  Matrix8<Scalar> t;
  for (int k = 0; k < n; ++k) {
    t(0, k) = Scalar(1) / std::sqrt(Scalar(n));
    t(1, k) = (2 * k + 1 - n) * std::sqrt(Scalar(3) / (n * (nn - 1)));
  }
  for (int p = 2; p < n; ++p) {
    const Scalar pp = Scalar(p) * p;
    const Scalar a1 = (Scalar(1) / p) * std::sqrt((4 * pp - 1) / (nn - pp));
    const Scalar a2 = (Scalar(1 - p) / p) * std::sqrt(Scalar(2 * p + 1) / Scalar(2 * p - 3)) *
                      std::sqrt((nn - Scalar(p - 1) * (p - 1)) / (nn - pp));
    for (int k = 0; k < n; ++k) t(p, k) = a1 * (2 * k + 1 - n) * t(p - 1, k) + a2 * t(p - 2, k);
  }
  // The recurrence is exact in theory; renormalize to absorb rounding drift.
  return detail::normalize_rows(t);
}

template <typename Scalar>
Matrix8<Scalar> build_matrix(TransformId id) {
  switch (id) {
    case TransformId::DCT: return dct_matrix<Scalar>();
    case TransformId::DST7: return dst7_matrix<Scalar>();
    case TransformId::DHT: return dht_matrix<Scalar>();
    case TransformId::WHT: return wht_matrix<Scalar>();
    case TransformId::DCHT: return dcht_matrix<Scalar>();
    default: break;
  }
  throw InvalidArgument("build_matrix: " + std::string(transform_name(id)) + " is not a block-matrix transform");
}

/// Cached double-precision matrix, built once on first use.
const Matrix8d& transform_matrix(TransformId id);

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& block) {
  if (!block.allFinite()) throw InvalidArgument("block transform: non-finite input");
}

}  // namespace detail

/// X = M x M^T.
template <typename Derived>
auto forward_block(const Matrix8<typename Derived::Scalar>& m, const Eigen::MatrixBase<Derived>& block) {
  detail::require_finite(block);
  return Block8<typename Derived::Scalar>(m * block * m.transpose());
}

/// x = M^T X M.
template <typename Derived>
auto inverse_block(const Matrix8<typename Derived::Scalar>& m, const Eigen::MatrixBase<Derived>& block) {
  detail::require_finite(block);
  return Block8<typename Derived::Scalar>(m.transpose() * block * m);
}

inline Block8d forward_block(TransformId id, const Block8d& block) {
  return forward_block(transform_matrix(id), block);
}
inline Block8d inverse_block(TransformId id, const Block8d& block) {
  return inverse_block(transform_matrix(id), block);
}

/// Spatial pattern reconstructed from the single frequency (m, n).
Block8d basis_image(TransformId id, int m, int n);

/// Apply the block transform to every 8x8 tile of a plane whose dimensions
/// are multiples of 8.
PlaneXd blockwise_forward(TransformId id, const PlaneXd& plane);
PlaneXd blockwise_inverse(TransformId id, const PlaneXd& coefs);

void require_block_multiple(const PlaneXd& plane, const char* who);

}  // namespace jtx
