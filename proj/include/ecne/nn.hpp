#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecne/rng.hpp"

namespace ecne {

/// Named trainable parameter with matching gradient buffer. Matrices are
/// row-major.
template <typename Real>
struct Tensor {
  std::string name;
  std::vector<std::size_t> shape;
  std::vector<Real> value;
  std::vector<Real> grad;

  Tensor() = default;
  Tensor(std::string n, std::vector<std::size_t> s)
      : name(std::move(n)), shape(std::move(s)) {
    std::size_t total = 1;
    for (std::size_t d : shape) total *= d;
    value.assign(total, Real(0));
    grad.assign(total, Real(0));
  }

  std::size_t size() const { return value.size(); }
  void zero_grad() { std::fill(grad.begin(), grad.end(), Real(0)); }

  void init_uniform(std::mt19937_64& rng, double radius) {
    for (auto& x : value)
      x = static_cast<Real>((next_double(rng) * 2.0 - 1.0) * radius);
  }
};

namespace nn {

// C (m x n) += A (m x k) * B (k x n)
template <typename Real>
void gemm(const Real* a, const Real* b, Real* c, std::size_t m, std::size_t k,
          std::size_t n) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      Real av = a[i * k + p];
      const Real* brow = b + p * n;
      Real* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
}

// C (m x n) += A^T * B, with A stored (k x m), B (k x n)
template <typename Real>
void gemm_at_b(const Real* a, const Real* b, Real* c, std::size_t k,
               std::size_t m, std::size_t n) {
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t i = 0; i < m; ++i) {
      Real av = a[p * m + i];
      const Real* brow = b + p * n;
      Real* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
}

// C (m x k) += A * B^T, with A stored (m x n), B (k x n)
template <typename Real>
void gemm_a_bt(const Real* a, const Real* b, Real* c, std::size_t m,
               std::size_t n, std::size_t k) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const Real* arow = a + i * n;
      const Real* brow = b + p * n;
      Real acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += arow[j] * brow[j];
      c[i * k + p] += acc;
    }
}

template <typename Real>
Real sigmoid(Real x) {
  return Real(1) / (Real(1) + std::exp(-x));
}

/// LSTM cell over batched equal-length sequences. Inputs and states are
/// (rows x batch) row-major; gate order in the stacked buffers is
/// input, forget, output, candidate.
template <typename Real>
struct LstmCell {
  Tensor<Real> w;  // (4h x in)
  Tensor<Real> u;  // (4h x h)
  Tensor<Real> b;  // (4h)
  std::size_t in = 0, hidden = 0;

  LstmCell() = default;
  LstmCell(const std::string& prefix, std::size_t in_dim, std::size_t h,
           std::mt19937_64& rng)
      : w(prefix + ".W", {4 * h, in_dim}),
        u(prefix + ".U", {4 * h, h}),
        b(prefix + ".b", {4 * h}),
        in(in_dim),
        hidden(h) {
    w.init_uniform(rng, 1.0 / std::sqrt(static_cast<double>(in_dim)));
    u.init_uniform(rng, 1.0 / std::sqrt(static_cast<double>(h)));
  }

  struct Cache {
    std::size_t steps = 0, batch = 0;
    std::vector<Real> gates;   // steps x (4h x batch), post-activation
    std::vector<Real> cells;   // steps x (h x batch)
    std::vector<Real> hiddens; // steps x (h x batch)
    std::vector<Real> inputs;  // steps x (in x batch), copied for backward

    const Real* h_at(std::size_t t, std::size_t h) const {
      return hiddens.data() + t * h * batch;
    }
  };

  // Runs the cell over `steps` time slices of a (in x batch) input buffer.
  void forward(const Real* x, std::size_t steps, std::size_t batch,
               Cache& cache) const {
    const std::size_t h = hidden, g4 = 4 * h;
    cache.steps = steps;
    cache.batch = batch;
    cache.gates.assign(steps * g4 * batch, Real(0));
    cache.cells.assign(steps * h * batch, Real(0));
    cache.hiddens.assign(steps * h * batch, Real(0));
    cache.inputs.assign(x, x + steps * in * batch);

    for (std::size_t t = 0; t < steps; ++t) {
      Real* z = cache.gates.data() + t * g4 * batch;
      for (std::size_t r = 0; r < g4; ++r)
        for (std::size_t c = 0; c < batch; ++c) z[r * batch + c] = b.value[r];
      gemm(w.value.data(), x + t * in * batch, z, g4, in, batch);
      if (t > 0)
        gemm(u.value.data(), cache.hiddens.data() + (t - 1) * h * batch, z,
             g4, h, batch);

      Real* ct = cache.cells.data() + t * h * batch;
      Real* ht = cache.hiddens.data() + t * h * batch;
      const Real* cprev =
          t > 0 ? cache.cells.data() + (t - 1) * h * batch : nullptr;
      for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < batch; ++c) {
          Real& zi = z[r * batch + c];
          Real& zf = z[(h + r) * batch + c];
          Real& zo = z[(2 * h + r) * batch + c];
          Real& zg = z[(3 * h + r) * batch + c];
          zi = sigmoid(zi);
          zf = sigmoid(zf);
          zo = sigmoid(zo);
          zg = std::tanh(zg);
          Real cell = zi * zg + (cprev ? zf * cprev[r * batch + c] : Real(0));
          ct[r * batch + c] = cell;
          ht[r * batch + c] = zo * std::tanh(cell);
        }
    }
  }

  // dh: (steps x h x batch) upstream gradient on every hidden state (zeros
  // where unused). Accumulates parameter grads; writes input grads into dx
  // when given.
  void backward(const Cache& cache, const std::vector<Real>& dh_all,
                Real* dx = nullptr) {
    const std::size_t h = hidden, g4 = 4 * h, batch = cache.batch;
    std::vector<Real> dh(h * batch, Real(0));
    std::vector<Real> dc(h * batch, Real(0));
    std::vector<Real> dz(g4 * batch, Real(0));

    for (std::size_t t = cache.steps; t-- > 0;) {
      const Real* z = cache.gates.data() + t * g4 * batch;
      const Real* ct = cache.cells.data() + t * h * batch;
      const Real* cprev =
          t > 0 ? cache.cells.data() + (t - 1) * h * batch : nullptr;
      const Real* dh_in = dh_all.data() + t * h * batch;

      for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < batch; ++c) {
          std::size_t idx = r * batch + c;
          Real gi = z[idx];
          Real gf = z[(h + r) * batch + c];
          Real go = z[(2 * h + r) * batch + c];
          Real gg = z[(3 * h + r) * batch + c];
          Real dht = dh[idx] + dh_in[idx];
          Real tc = std::tanh(ct[idx]);
          Real dct = dc[idx] + dht * go * (Real(1) - tc * tc);
          Real dgo = dht * tc;
          Real dgi = dct * gg;
          Real dgg = dct * gi;
          Real dgf = cprev ? dct * cprev[idx] : Real(0);
          dz[idx] = dgi * gi * (Real(1) - gi);
          dz[(h + r) * batch + c] = dgf * gf * (Real(1) - gf);
          dz[(2 * h + r) * batch + c] = dgo * go * (Real(1) - go);
          dz[(3 * h + r) * batch + c] = dgg * (Real(1) - gg * gg);
          dc[idx] = dct * gf;
        }

      gemm_a_bt(dz.data(), cache.inputs.data() + t * in * batch,
                w.grad.data(), g4, batch, in);
      if (t > 0)
        gemm_a_bt(dz.data(), cache.hiddens.data() + (t - 1) * h * batch,
                  u.grad.data(), g4, batch, h);
      for (std::size_t r = 0; r < g4; ++r) {
        Real acc = 0;
        for (std::size_t c = 0; c < batch; ++c) acc += dz[r * batch + c];
        b.grad[r] += acc;
      }
      if (dx)
        gemm_at_b(w.value.data(), dz.data(), dx + t * in * batch, g4, in,
                  batch);
      std::fill(dh.begin(), dh.end(), Real(0));
      if (t > 0)
        gemm_at_b(u.value.data(), dz.data(), dh.data(), g4, h, batch);
      std::fill(dz.begin(), dz.end(), Real(0));
    }
  }
};

}  // namespace nn

/// Adam with bias correction; moment buffers keyed by registration order.
template <typename Real>
class AdamOptimizer {
 public:
  explicit AdamOptimizer(double lr = 0.001, double beta1 = 0.9,
                         double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(std::vector<Tensor<Real>*>& tensors) {
    if (m_.empty()) {
      m_.resize(tensors.size());
      v_.resize(tensors.size());
      for (std::size_t i = 0; i < tensors.size(); ++i) {
        m_[i].assign(tensors[i]->size(), 0.0);
        v_[i].assign(tensors[i]->size(), 0.0);
      }
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      Tensor<Real>& p = *tensors[i];
      for (std::size_t j = 0; j < p.size(); ++j) {
        double g = static_cast<double>(p.grad[j]);
        m_[i][j] = beta1_ * m_[i][j] + (1.0 - beta1_) * g;
        v_[i][j] = beta2_ * v_[i][j] + (1.0 - beta2_) * g * g;
        double mh = m_[i][j] / bc1;
        double vh = v_[i][j] / bc2;
        p.value[j] -= static_cast<Real>(lr_ * mh / (std::sqrt(vh) + eps_));
      }
    }
  }

  double learning_rate() const { return lr_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

}  // namespace ecne
