#include "qgnn/smp.hpp"

#include <cmath>
#include <string>

namespace qgnn {

void SmpConfig::validate() const {
  require(mu > 0.0, "SmpConfig: mu must be positive");
  require(delta0 > 0.0, "SmpConfig: delta0 must be positive");
  require(layers >= 1, "SmpConfig: layers must be >= 1");
  require(resolved_eta_h() > 0.0 && eta_lambda >= 0.0 && eta_s >= 0.0,
          "SmpConfig: step sizes must be positive");
}

double layer_smoothness(const Graph& g, const Matrix& h_cur, const Matrix& h_prev) {
  require(h_cur.rows() == h_prev.rows() && h_cur.cols() == h_prev.cols(),
          "layer_smoothness: shape mismatch");
  return laplacian_quadratic(g, h_cur - h_prev);
}

Matrix bdmm_step(const Graph& g, const Matrix& h_prev, const Matrix& x, SmpState& state,
                 const SmpConfig& cfg, const SmpStepHooks* hooks) {
  require(h_prev.rows() == g.n && x.rows() == g.n && h_prev.cols() == x.cols(),
          "bdmm_step: shape mismatch");
  const int layer = state.layer + 1;
  const double eta_h = cfg.resolved_eta_h();
  const double mu = cfg.mu;
  const double lambda_used = state.lambda;
  const double delta = cfg.delta0 * static_cast<double>(g.edge_count());

  // H_bar^{l+1} = (1 - (1+mu) eta_H) H^l + mu eta_H A~ H^l + eta_H X
  Matrix h_bar = (1.0 - (1.0 + mu) * eta_h) * h_prev + (mu * eta_h) * (g.norm_adj * h_prev) +
                 eta_h * x;
  if (hooks && hooks->on_h_bar) h_bar = hooks->on_h_bar(layer, h_bar);

  // H^{l+1} = H_bar + 2 eta_H lambda (I - A~)(H_bar - H^l)
  Matrix diff = h_bar - h_prev;
  Matrix h_next = h_bar + (2.0 * eta_h * lambda_used) * (diff - g.norm_adj * diff);
  if (hooks && hooks->on_h_out) h_next = hooks->on_h_out(layer, h_next);

  if (!h_next.allFinite())
    throw std::runtime_error("bdmm_step: propagation diverged at layer " + std::to_string(layer));

  // s^{l+1} = s^l + 2 eta_s lambda^l s^l
  state.slack += 2.0 * cfg.eta_s * lambda_used * state.slack;

  // lambda^{l+1} = lambda^l + eta_lambda * g(H^{l+1}, H^l, s^{l+1})
  const double smooth = layer_smoothness(g, h_next, h_prev);
  const double gval = delta - smooth - state.slack * state.slack;
  state.lambda += cfg.eta_lambda * gval;
  if (state.lambda < 0.0) state.lambda = 0.0;  // inequality multiplier

  state.layer = layer;
  state.trace.push_back({layer, smooth, lambda_used, state.lambda, state.slack, gval});
  return h_next;
}

SmpResult propagate(const Graph& g, const Matrix& x, const SmpConfig& cfg,
                    const SmpStepHooks* hooks) {
  cfg.validate();
  require(x.rows() == g.n, "propagate: x.rows() != graph node count");

  SmpResult res;
  res.state.lambda = cfg.lambda0;
  res.state.slack = cfg.slack0;
  res.h = x;
  for (int l = 0; l < cfg.layers; ++l) res.h = bdmm_step(g, res.h, x, res.state, cfg, hooks);
  if (cfg.layers >= 2) res.mean_smoothness = mean_smoothness(res.state);
  return res;
}

double mean_smoothness(const SmpState& state) {
  const int layers = static_cast<int>(state.trace.size());
  require(layers >= 2, "mean_smoothness: needs at least 2 layers");
  double sum = 0.0;
  for (const auto& rec : state.trace)
    if (rec.layer >= 2) sum += rec.smoothness;
  return sum / static_cast<double>(layers - 1);
}

Lemma1Report lemma1_bound(const Graph& g, const Matrix& h_l, const Matrix& h_l_q,
                          const Matrix& x_q, int layer, double delta) {
  require(g.n <= 500, "lemma1_bound: graph too large for dense eigendecomposition (n > 500)");
  require(h_l.rows() == g.n && h_l_q.rows() == g.n && x_q.rows() == g.n,
          "lemma1_bound: shape mismatch");
  require(layer >= 0, "lemma1_bound: negative layer");

  Matrix lap = Matrix::Identity(g.n, g.n) - dense_norm_adj(g);
  Eigen::SelfAdjointEigenSolver<Matrix> es(lap);
  require(es.info() == Eigen::Success, "lemma1_bound: eigendecomposition failed");

  Lemma1Report rep;
  constexpr double kTol = 1e-8;
  rep.eigen_gap = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev > kTol) {
      rep.trace_pinv += 1.0 / ev;
      if (rep.eigen_gap == 0.0 || ev < rep.eigen_gap) rep.eigen_gap = ev;
    }
  }
  rep.f_e = (h_l - h_l_q).squaredNorm();
  rep.bound = static_cast<double>(layer) * delta * rep.trace_pinv + (h_l - x_q).squaredNorm();
  rep.holds = rep.f_e <= rep.bound;
  return rep;
}

}  // namespace qgnn
