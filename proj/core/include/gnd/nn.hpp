#pragma once

// Dense feed-forward plumbing shared by the autoregressive density model
// and the marginal baseline: ReLU hidden layers, sigmoid outputs, binary
// cross-entropy, exact backprop, Adam. Optionally each weight matrix is
// elementwise-masked; gradients respect the masks, so masked entries stay
// exactly zero through any number of updates.
//
// Everything is deterministic: initialization order is fixed, Eigen runs
// single-threaded here, and all randomness comes from a CounterRng.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gnd/gf2.hpp"
#include "gnd/rng.hpp"

namespace gnd {

template <class Scalar>
using NnMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using NnVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Output probabilities are clamped to [kProbClip, 1-kProbClip] inside the
// loss, and the gradient is zeroed where the clamp is active, so analytic
// gradients match the clamped loss exactly.
inline constexpr double kProbClip = 1e-7;

template <class Scalar>
struct DenseNet {
  using Mat = NnMatrix<Scalar>;
  using Vec = NnVector<Scalar>;

  std::vector<Mat> w;     // w[l]: dims[l+1] x dims[l]
  std::vector<Vec> b;     // b[l]: dims[l+1]
  std::vector<Mat> mask;  // empty (dense net) or one 0/1 matrix per w[l]

  std::size_t layers() const { return w.size(); }
  std::size_t in_dim() const { return static_cast<std::size_t>(w.front().cols()); }
  std::size_t out_dim() const { return static_cast<std::size_t>(w.back().rows()); }
  bool masked() const { return !mask.empty(); }

  // Uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) weights drawn row-major from
  // rng, zero biases. Masks (if any) must be installed first; they are
  // applied after the draw.
  void init(const std::vector<std::size_t>& dims, CounterRng& rng) {
    if (dims.size() < 2) throw std::invalid_argument("DenseNet: need >= 2 dims");
    w.clear();
    b.clear();
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
      Mat wl(dims[l + 1], dims[l]);
      const double bound = 1.0 / std::sqrt(static_cast<double>(dims[l]));
      for (Eigen::Index r = 0; r < wl.rows(); ++r)
        for (Eigen::Index c = 0; c < wl.cols(); ++c)
          wl(r, c) =
              static_cast<Scalar>((2.0 * rng.next_double() - 1.0) * bound);
      w.push_back(std::move(wl));
      b.push_back(Vec::Zero(static_cast<Eigen::Index>(dims[l + 1])));
    }
    apply_masks();
  }

  void apply_masks() {
    if (mask.empty()) return;
    if (mask.size() != w.size())
      throw std::invalid_argument("DenseNet: mask/layer count mismatch");
    for (std::size_t l = 0; l < w.size(); ++l) {
      if (mask[l].rows() != w[l].rows() || mask[l].cols() != w[l].cols())
        throw std::invalid_argument("DenseNet: mask shape mismatch");
      w[l] = w[l].cwiseProduct(mask[l]);
    }
  }

  std::size_t parameter_count(bool count_masked) const {
    std::size_t total = 0;
    for (std::size_t l = 0; l < w.size(); ++l) {
      if (!count_masked && masked())
        total += static_cast<std::size_t>(
            mask[l].template cast<double>().sum() + 0.5);
      else
        total += static_cast<std::size_t>(w[l].size());
      total += static_cast<std::size_t>(b[l].size());
    }
    return total;
  }

  // Activations kept around for backward.
  struct Trace {
    std::vector<Mat> h;  // h[0] = input, h[l] = ReLU output of layer l-1
    std::vector<Mat> a;  // pre-activations of the hidden layers
    Mat probs;           // sigmoid outputs
  };

  void forward_trace(const Mat& x, Trace& t) const {
    if (static_cast<std::size_t>(x.rows()) != in_dim())
      throw std::invalid_argument("DenseNet: input dimension mismatch");
    const std::size_t L = w.size();
    t.h.resize(L);
    t.a.resize(L - 1);
    t.h[0] = x;
    for (std::size_t l = 0; l + 1 < L; ++l) {
      t.a[l] = (w[l] * t.h[l]).colwise() + b[l];
      t.h[l + 1] = t.a[l].cwiseMax(Scalar(0));
    }
    Mat logits = (w[L - 1] * t.h[L - 1]).colwise() + b[L - 1];
    t.probs = ((-logits.array()).exp() + Scalar(1)).inverse().matrix();
  }

  Mat forward(const Mat& x) const {
    Trace t;
    forward_trace(x, t);
    return std::move(t.probs);
  }
};

template <class Scalar>
struct Gradients {
  std::vector<NnMatrix<Scalar>> w;
  std::vector<NnVector<Scalar>> b;

  Gradients() = default;
  explicit Gradients(const DenseNet<Scalar>& net) {
    for (std::size_t l = 0; l < net.w.size(); ++l) {
      w.emplace_back(NnMatrix<Scalar>::Zero(net.w[l].rows(), net.w[l].cols()));
      b.emplace_back(NnVector<Scalar>::Zero(net.b[l].size()));
    }
  }
};

// Mean over batch columns of the summed per-position binary cross-entropy.
// For the autoregressive net this is exactly -E[log q(bits)].
template <class Scalar>
double bce_loss(const NnMatrix<Scalar>& probs, const NnMatrix<Scalar>& targets) {
  if (probs.rows() != targets.rows() || probs.cols() != targets.cols())
    throw std::invalid_argument("bce_loss: shape mismatch");
  if (probs.cols() == 0) throw std::invalid_argument("bce_loss: empty batch");
  const auto p = probs.array()
                     .template cast<double>()
                     .max(kProbClip)
                     .min(1.0 - kProbClip);
  const auto t = targets.array().template cast<double>();
  const double total = -(t * p.log() + (1.0 - t) * (1.0 - p).log()).sum();
  return total / static_cast<double>(probs.cols());
}

// Exact gradients of bce_loss; trace must come from forward_trace on the
// same inputs. Masked weight entries get zero gradient.
template <class Scalar>
void backward(const DenseNet<Scalar>& net,
              const typename DenseNet<Scalar>::Trace& trace,
              const NnMatrix<Scalar>& targets, Gradients<Scalar>& grads) {
  using Mat = NnMatrix<Scalar>;
  const std::size_t L = net.w.size();
  const Scalar lo = static_cast<Scalar>(kProbClip);
  const Scalar hi = static_cast<Scalar>(1.0 - kProbClip);
  const Scalar inv_batch = Scalar(1) / static_cast<Scalar>(targets.cols());

  // d(loss)/d(logit) = (p - t)/B, except where the probability clamp is
  // active (there the clamped loss is locally constant in the logit).
  Mat delta = (((trace.probs.array() > lo) && (trace.probs.array() < hi))
                   .select((trace.probs - targets).array() * inv_batch,
                           Scalar(0)))
                  .matrix();

  for (std::size_t l = L; l-- > 0;) {
    grads.w[l].noalias() = delta * trace.h[l].transpose();
    if (net.masked()) grads.w[l] = grads.w[l].cwiseProduct(net.mask[l]);
    grads.b[l] = delta.rowwise().sum();
    if (l > 0) {
      Mat back = net.w[l].transpose() * delta;
      delta = ((trace.a[l - 1].array() > Scalar(0))
                   .select(back.array(), Scalar(0)))
                  .matrix();
    }
  }
}

template <class Scalar>
struct AdamState {
  std::vector<NnMatrix<Scalar>> mw, vw;
  std::vector<NnVector<Scalar>> mb, vb;
  std::size_t t = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  AdamState() = default;
  explicit AdamState(const DenseNet<Scalar>& net) {
    for (std::size_t l = 0; l < net.w.size(); ++l) {
      mw.emplace_back(NnMatrix<Scalar>::Zero(net.w[l].rows(), net.w[l].cols()));
      vw.emplace_back(NnMatrix<Scalar>::Zero(net.w[l].rows(), net.w[l].cols()));
      mb.emplace_back(NnVector<Scalar>::Zero(net.b[l].size()));
      vb.emplace_back(NnVector<Scalar>::Zero(net.b[l].size()));
    }
  }

  // Standard bias-corrected update. Masked entries have zero gradient and
  // zero moments, so they never move.
  void step(DenseNet<Scalar>& net, const Gradients<Scalar>& g, double lr) {
    ++t;
    const Scalar b1 = static_cast<Scalar>(beta1);
    const Scalar b2 = static_cast<Scalar>(beta2);
    const Scalar corr1 =
        static_cast<Scalar>(1.0 - std::pow(beta1, static_cast<double>(t)));
    const Scalar corr2 =
        static_cast<Scalar>(1.0 - std::pow(beta2, static_cast<double>(t)));
    const Scalar rate = static_cast<Scalar>(lr);
    const Scalar e = static_cast<Scalar>(eps);
    for (std::size_t l = 0; l < net.w.size(); ++l) {
      mw[l] = b1 * mw[l] + (Scalar(1) - b1) * g.w[l];
      vw[l] = (b2 * vw[l].array() + (Scalar(1) - b2) * g.w[l].array().square())
                  .matrix();
      net.w[l].array() -= rate * (mw[l].array() / corr1) /
                          ((vw[l].array() / corr2).sqrt() + e);
      mb[l] = b1 * mb[l] + (Scalar(1) - b1) * g.b[l];
      vb[l] = (b2 * vb[l].array() + (Scalar(1) - b2) * g.b[l].array().square())
                  .matrix();
      net.b[l].array() -= rate * (mb[l].array() / corr1) /
                          ((vb[l].array() / corr2).sqrt() + e);
    }
  }
};

}  // namespace gnd
