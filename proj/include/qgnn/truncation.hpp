#pragma once

#include "qgnn/types.hpp"

namespace qgnn {

// Truncation from a b1-bit code grid to b2 levels. Outputs stay on the b1
// grid (multiples of the truncation scale), so the b1 dequantization
// parameters keep applying.
struct TruncationSpec {
  int bits_from = 8;  // b1
  int bits_to = 2;    // b2

  double scale() const {  // s0 = (2^b1 - 1) / (2^b2 - 1) under unsigned levels
    return static_cast<double>((1 << bits_from) - 1) / static_cast<double>((1 << bits_to) - 1);
  }
};

// round(codes / s0) * s0, with the intermediate b2-level code clipped to its
// representable range.
Matrix truncate_bt(const Matrix& codes, const TruncationSpec& spec);

// round((codes + round(sk)) / s0) * s0 with the same clip; reduces to plain BT
// when round(sk) = 0. sk is the skewness of the pre-quantization tensor.
Matrix truncate_bt_star(const Matrix& codes, const TruncationSpec& spec, double skewness);

// The b2-level indices themselves (what a packed export stores).
Matrix truncate_levels(const Matrix& codes, const TruncationSpec& spec, double code_shift);

struct MomentReport {
  double skewness = 0.0;
  double kurtosis = 0.0;
  double kappa_n = 0.0;  // |kurtosis - 3|
};

// Population moments: sk = m3/m2^1.5, kappa = m4/m2^2.
MomentReport moments(const Matrix& u);

}  // namespace qgnn
