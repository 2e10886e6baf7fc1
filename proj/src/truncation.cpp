#include "qgnn/truncation.hpp"

#include <cmath>

namespace qgnn {

namespace {

void check_spec(const TruncationSpec& spec) {
  require(spec.bits_from >= spec.bits_to, "truncate: bits_to exceeds bits_from");
  require(spec.bits_to >= 2 && spec.bits_from <= 8, "truncate: bits outside {2..8}");
}

}  // namespace

Matrix truncate_levels(const Matrix& codes, const TruncationSpec& spec, double code_shift) {
  check_spec(spec);
  const double s0 = spec.scale();
  const double hi = static_cast<double>((1 << spec.bits_to) - 1);
  return codes.unaryExpr([&](double c) {
    double level = round_half_away((c + code_shift) / s0);
    return std::min(hi, std::max(0.0, level));
  });
}

Matrix truncate_bt(const Matrix& codes, const TruncationSpec& spec) {
  return truncate_levels(codes, spec, 0.0) * spec.scale();
}

Matrix truncate_bt_star(const Matrix& codes, const TruncationSpec& spec, double skewness) {
  return truncate_levels(codes, spec, round_half_away(skewness)) * spec.scale();
}

MomentReport moments(const Matrix& u) {
  require(u.size() >= 2, "moments: need at least 2 values");
  const double n = static_cast<double>(u.size());
  const double mean = u.mean();
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const double d = u(i, j) - mean;
      const double d2 = d * d;
      m2 += d2;
      m3 += d2 * d;
      m4 += d2 * d2;
    }
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  require(m2 > 0.0, "moments: degenerate distribution (zero variance)");

  MomentReport r;
  r.skewness = m3 / std::pow(m2, 1.5);
  r.kurtosis = m4 / (m2 * m2);
  r.kappa_n = std::abs(r.kurtosis - 3.0);
  return r;
}

}  // namespace qgnn
