#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qgnn/types.hpp"

namespace qgnn {

// Unsigned code levels [0, 2^b - 1].
struct QuantConfig {
  int bits = 8;

  double alpha_q() const { return 0.0; }
  double beta_q() const { return static_cast<double>((1 << bits) - 1); }
  double levels() const { return beta_q() - alpha_q(); }
};

// Per-tensor affine quantization state with a learnable range scale gamma.
// The effective range is [gamma*alpha, gamma*beta]; the zero point does not
// depend on gamma.
struct QuantParams {
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 1.0;

  double unscaled_step(const QuantConfig& qc) const { return (beta - alpha) / qc.levels(); }
  double step(const QuantConfig& qc) const { return gamma * unscaled_step(qc); }
  std::int32_t zero_point(const QuantConfig& qc) const {
    return static_cast<std::int32_t>(
        round_half_away((beta * qc.alpha_q() - alpha * qc.beta_q()) / (beta - alpha)));
  }

  void set_range(double a, double b);  // rejects b <= a
};

// min/max over all entries; a degenerate range [a, a] widens to [a-0.5, a+0.5].
std::pair<double, double> observe_range(const Matrix& u);

// clip(round(u/s_gamma + z), alpha_q, beta_q); codes returned as integer-valued doubles.
Matrix quantize(const Matrix& u, const QuantParams& qp, const QuantConfig& qc);

// s_gamma * (codes - z)
Matrix dequantize(const Matrix& codes, const QuantParams& qp, const QuantConfig& qc);

// Elementwise d(dequantized)/d(gamma) under the straight-through estimator:
// alpha_q / beta_q where the pre-clip code falls outside the level bounds,
// s*(code - z) - u/gamma in the interior.
Matrix gamma_gradient(const Matrix& u, const QuantParams& qp, const QuantConfig& qc);

struct FakeQuantResult {
  Matrix value;       // dequantize(quantize(u))
  Matrix ste_mask;    // 1 where the pre-clip code is within level bounds, else 0
  Matrix gamma_grad;  // elementwise gamma gradient
};

FakeQuantResult fake_quantize(const Matrix& u, const QuantParams& qp, const QuantConfig& qc);

struct MseSplit {
  double overload = 0.0;  // clipped samples
  double granular = 0.0;  // in-range samples
  double total = 0.0;     // overload + granular, exactly
};

MseSplit mse_decomposition(const Matrix& samples, const QuantParams& qp, const QuantConfig& qc);

// Bit-packed codes, row-major, little-endian within each byte (the first code
// of a row occupies the least significant bits), each row padded to a byte
// boundary. 4 codes/byte at b=2, 2 at b=4, 1 at b=8.
struct PackedTensor {
  int bits = 8;
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> payload;
  double s_gamma = 1.0;
  std::int32_t z_gamma = 0;

  std::int64_t row_bytes() const { return ceil_div(static_cast<std::int64_t>(cols) * bits, 8); }
};

PackedTensor pack(const Matrix& codes, int bits);
Matrix unpack(const PackedTensor& pt);

}  // namespace qgnn
