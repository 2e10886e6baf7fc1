#include "qgnn/quantizer.hpp"

#include <cmath>

namespace qgnn {

void QuantParams::set_range(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b), "QuantParams: non-finite range");
  require(b > a, "QuantParams: degenerate range (beta <= alpha)");
  alpha = a;
  beta = b;
}

std::pair<double, double> observe_range(const Matrix& u) {
  require(u.size() > 0, "observe_range: empty tensor");
  require(u.allFinite(), "observe_range: tensor contains NaN/Inf");
  double lo = u.minCoeff();
  double hi = u.maxCoeff();
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi};
}

Matrix quantize(const Matrix& u, const QuantParams& qp, const QuantConfig& qc) {
  const double s = qp.step(qc);
  require(s > 0.0, "quantize: nonpositive step");
  const double z = qp.zero_point(qc);
  const double lo = qc.alpha_q(), hi = qc.beta_q();
  return u.unaryExpr([&](double x) {
    double code = round_half_away(x / s + z);
    return std::min(hi, std::max(lo, code));
  });
}

Matrix dequantize(const Matrix& codes, const QuantParams& qp, const QuantConfig& qc) {
  const double s = qp.step(qc);
  const double z = qp.zero_point(qc);
  return s * (codes.array() - z).matrix();
}

Matrix gamma_gradient(const Matrix& u, const QuantParams& qp, const QuantConfig& qc) {
  const double s_g = qp.step(qc);
  require(s_g > 0.0, "gamma_gradient: nonpositive step");
  const double s = qp.unscaled_step(qc);
  const double z = qp.zero_point(qc);
  const double lo = qc.alpha_q(), hi = qc.beta_q();
  return u.unaryExpr([&](double x) {
    double code = round_half_away(x / s_g + z);
    if (code < lo) return lo;  // alpha_q
    if (code > hi) return hi;  // beta_q
    return s * (code - z) - x / qp.gamma;
  });
}

FakeQuantResult fake_quantize(const Matrix& u, const QuantParams& qp, const QuantConfig& qc) {
  const double s_g = qp.step(qc);
  require(s_g > 0.0, "fake_quantize: nonpositive step");
  const double z = qp.zero_point(qc);
  const double lo = qc.alpha_q(), hi = qc.beta_q();

  FakeQuantResult r;
  r.value.resize(u.rows(), u.cols());
  r.ste_mask.resize(u.rows(), u.cols());
  r.gamma_grad.resize(u.rows(), u.cols());
  const double s = qp.unscaled_step(qc);
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const double x = u(i, j);
      const double pre = round_half_away(x / s_g + z);
      const double code = std::min(hi, std::max(lo, pre));
      r.value(i, j) = s_g * (code - z);
      r.ste_mask(i, j) = (pre >= lo && pre <= hi) ? 1.0 : 0.0;
      if (pre < lo)
        r.gamma_grad(i, j) = lo;
      else if (pre > hi)
        r.gamma_grad(i, j) = hi;
      else
        r.gamma_grad(i, j) = s * (pre - z) - x / qp.gamma;
    }
  }
  return r;
}

MseSplit mse_decomposition(const Matrix& samples, const QuantParams& qp, const QuantConfig& qc) {
  require(samples.size() > 0, "mse_decomposition: empty sample");
  const double s_g = qp.step(qc);
  require(s_g > 0.0, "mse_decomposition: nonpositive step");
  const double z = qp.zero_point(qc);
  const double lo = qc.alpha_q(), hi = qc.beta_q();

  MseSplit split;
  for (Eigen::Index j = 0; j < samples.cols(); ++j) {
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
      const double x = samples(i, j);
      const double pre = round_half_away(x / s_g + z);
      const double code = std::min(hi, std::max(lo, pre));
      const double err = x - s_g * (code - z);
      if (pre < lo || pre > hi)
        split.overload += err * err;
      else
        split.granular += err * err;
    }
  }
  split.total = split.overload + split.granular;
  return split;
}

PackedTensor pack(const Matrix& codes, int bits) {
  require(bits == 2 || bits == 4 || bits == 8, "pack: bits must be 2, 4 or 8");
  const int max_code = (1 << bits) - 1;
  PackedTensor pt;
  pt.bits = bits;
  pt.rows = static_cast<int>(codes.rows());
  pt.cols = static_cast<int>(codes.cols());
  pt.payload.assign(static_cast<std::size_t>(pt.rows) * pt.row_bytes(), 0);

  const int per_byte = 8 / bits;
  for (int i = 0; i < pt.rows; ++i) {
    std::uint8_t* row = pt.payload.data() + static_cast<std::size_t>(i) * pt.row_bytes();
    for (int j = 0; j < pt.cols; ++j) {
      const double c = codes(i, j);
      const long v = std::lround(c);
      require(c == static_cast<double>(v) && v >= 0 && v <= max_code,
              "pack: code out of range for bit width");
      row[j / per_byte] |= static_cast<std::uint8_t>(v) << (bits * (j % per_byte));
    }
  }
  return pt;
}

Matrix unpack(const PackedTensor& pt) {
  require(pt.bits == 2 || pt.bits == 4 || pt.bits == 8, "unpack: bad bit width");
  require(pt.payload.size() == static_cast<std::size_t>(pt.rows) * pt.row_bytes(),
          "unpack: payload size mismatch");
  Matrix codes(pt.rows, pt.cols);
  const int per_byte = 8 / pt.bits;
  const std::uint8_t mask = static_cast<std::uint8_t>((1 << pt.bits) - 1);
  for (int i = 0; i < pt.rows; ++i) {
    const std::uint8_t* row = pt.payload.data() + static_cast<std::size_t>(i) * pt.row_bytes();
    for (int j = 0; j < pt.cols; ++j) {
      codes(i, j) = (row[j / per_byte] >> (pt.bits * (j % per_byte))) & mask;
    }
  }
  return codes;
}

}  // namespace qgnn
