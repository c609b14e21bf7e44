#include "jtx/wavelets.hpp"

#include <string>

namespace jtx {

const LiftingSpec<double>& lifting_spec(TransformId id) {
  static const LiftingSpec<double> k53 = cdf53<double>();
  static const LiftingSpec<double> k97 = cdf97<double>();
  switch (id) {
    case TransformId::DWT53:
    case TransformId::RB53: return k53;
    case TransformId::DWT97:
    case TransformId::RB97: return k97;
    default: break;
  }
  throw InvalidArgument("lifting_spec: " + std::string(transform_name(id)) + " is not a wavelet transform");
}

}  // namespace jtx
