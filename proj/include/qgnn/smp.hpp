#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qgnn/graph.hpp"
#include "qgnn/types.hpp"

namespace qgnn {

struct SmpConfig {
  double mu = 6.0;      // smoothness weight of the denoising objective
  double delta0 = 0.1;  // per-edge constraint threshold; delta = delta0 * |E|
  int layers = 10;
  double eta_h = -1.0;  // <= 0 selects the default 1/(1+mu)
  double eta_lambda = 1e-5;
  double eta_s = 1e-5;
  double lambda0 = 0.0;
  double slack0 = 1.0;

  double resolved_eta_h() const { return eta_h > 0.0 ? eta_h : 1.0 / (1.0 + mu); }
  void validate() const;
};

struct SmpState {
  double lambda = 0.0;
  double slack = 1.0;

  struct LayerRecord {
    int layer = 0;           // l of the produced H^l, 1-based
    double smoothness = 0;   // S_l between H^l and H^{l-1}
    double lambda_used = 0;  // multiplier entering the H update of this step
    double lambda_after = 0;
    double slack_after = 0;
    double g = 0;  // delta - S_l - s^2 evaluated after the step
  };
  std::vector<LayerRecord> trace;
};

// Per-step interception of the propagation tensors (quantization hooks).
// Either function may be empty; it receives the raw tensor and returns the
// value the iteration continues with.
struct SmpStepHooks {
  std::function<Matrix(int layer, const Matrix& h_bar)> on_h_bar;
  std::function<Matrix(int layer, const Matrix& h_out)> on_h_out;
};

// S_l = tr((H^l - H^{l-1})^T L~ (H^l - H^{l-1}))
double layer_smoothness(const Graph& g, const Matrix& h_cur, const Matrix& h_prev);

// One BDMM update: the denoising step, the multiplier correction, then the
// slack and multiplier updates. state.layer counts produced layers.
Matrix bdmm_step(const Graph& g, const Matrix& h_prev, const Matrix& x, SmpState& state,
                 const SmpConfig& cfg, const SmpStepHooks* hooks = nullptr);

struct SmpResult {
  Matrix h;  // H^L
  SmpState state;
  std::optional<double> mean_smoothness;  // S_bar; absent when layers < 2
};

// Runs cfg.layers BDMM steps from H^0 = X with fresh multiplier state.
SmpResult propagate(const Graph& g, const Matrix& x, const SmpConfig& cfg,
                    const SmpStepHooks* hooks = nullptr);

// S_bar = sum_{l in [2, L]} S_l / (L - 1); throws when fewer than 2 layers.
double mean_smoothness(const SmpState& state);

struct Lemma1Report {
  double bound = 0.0;       // l * delta * tr(Lambda^+) + ||H^l - X^q||_F^2
  double f_e = 0.0;         // ||H^l - H^{l,q}||_F^2
  double trace_pinv = 0.0;  // sum of reciprocals of eigenvalues above 1e-8
  double eigen_gap = 0.0;   // smallest eigenvalue counted into the trace
  bool holds = false;
};

// Evaluates the layer-l quantization-error bound with the pseudo-inverse
// convention for tr(Lambda^{-1}). Dense eigendecomposition; guarded to n <= 500.
Lemma1Report lemma1_bound(const Graph& g, const Matrix& h_l, const Matrix& h_l_q,
                          const Matrix& x_q, int layer, double delta);

}  // namespace qgnn
