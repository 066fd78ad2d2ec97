#include "gnd/made.hpp"

#include <stdexcept>

namespace gnd {

void MadeConfig::validate() const {
  if (n_in() < 2)
    throw std::invalid_argument("MadeConfig: need at least 2 input bits");
  if (depth < 1) throw std::invalid_argument("MadeConfig: depth must be >= 1");
  if (width < 1) throw std::invalid_argument("MadeConfig: width must be >= 1");
  if (batch_size < 1)
    throw std::invalid_argument("MadeConfig: batch_size must be >= 1");
  if (!(learning_rate > 0))
    throw std::invalid_argument("MadeConfig: learning_rate must be positive");
}

MadeMasks build_masks(const MadeConfig& config) {
  config.validate();
  const std::size_t n = config.n_in();
  const std::size_t h = config.hidden_size();

  MadeMasks out;
  out.degrees.resize(h);
  for (std::size_t u = 0; u < h; ++u) out.degrees[u] = 1 + u % (n - 1);

  // Input j (0-based) carries position j+1; hidden unit u may read inputs
  // with position <= deg(u); output i may read hidden units with
  // deg < i+1. Composition: output i depends on input j iff j < i.
  BinaryMatrix first(h, n);
  for (std::size_t u = 0; u < h; ++u)
    for (std::size_t j = 0; j < n; ++j)
      if (out.degrees[u] >= j + 1) first.set(u, j, true);
  out.masks.push_back(std::move(first));

  if (config.depth > 1) {
    BinaryMatrix hid(h, h);
    for (std::size_t u2 = 0; u2 < h; ++u2)
      for (std::size_t u1 = 0; u1 < h; ++u1)
        if (out.degrees[u2] >= out.degrees[u1]) hid.set(u2, u1, true);
    for (std::size_t l = 1; l < config.depth; ++l) out.masks.push_back(hid);
  }

  BinaryMatrix last(n, h);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t u = 0; u < h; ++u)
      if (i >= out.degrees[u]) last.set(i, u, true);
  out.masks.push_back(std::move(last));
  return out;
}

namespace {

template <class Scalar>
NnMatrix<Scalar> to_scalar_matrix(const BinaryMatrix& m) {
  NnMatrix<Scalar> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          m.get(r, c) ? Scalar(1) : Scalar(0);
  return out;
}

}  // namespace

template <class Scalar>
MadeNet<Scalar> MadeNet<Scalar>::initialize(const MadeConfig& config,
                                            std::uint64_t fingerprint) {
  MadeMasks masks = build_masks(config);
  MadeNet net;
  net.config = config;
  net.fingerprint = fingerprint;
  for (const auto& m : masks.masks)
    net.net.mask.push_back(to_scalar_matrix<Scalar>(m));
  std::vector<std::size_t> dims(config.depth + 2, config.hidden_size());
  dims.front() = dims.back() = config.n_in();
  CounterRng rng(config.seed, 0);
  net.net.init(dims, rng);
  return net;
}

template <class Scalar>
double MadeNet<Scalar>::conditional(const BinaryVector& bits,
                                    std::size_t position) const {
  const std::size_t n = config.n_in();
  if (position >= n)
    throw std::invalid_argument("conditional: position out of range");
  if (bits.size() > n)
    throw std::invalid_argument("conditional: too many input bits");
  NnMatrix<Scalar> x = NnMatrix<Scalar>::Zero(static_cast<Eigen::Index>(n), 1);
  for (std::size_t j = 0; j < position && j < bits.size(); ++j)
    if (bits.get(j)) x(static_cast<Eigen::Index>(j), 0) = Scalar(1);
  return static_cast<double>(
      net.forward(x)(static_cast<Eigen::Index>(position), 0));
}

template <class Scalar>
double MadeNet<Scalar>::log_score(const BinaryVector& bits) const {
  const std::size_t n = config.n_in();
  if (bits.size() != n)
    throw std::invalid_argument("log_score: bit count mismatch");
  NnMatrix<Scalar> x(static_cast<Eigen::Index>(n), 1);
  for (std::size_t j = 0; j < n; ++j)
    x(static_cast<Eigen::Index>(j), 0) = bits.get(j) ? Scalar(1) : Scalar(0);
  NnMatrix<Scalar> p = net.forward(x);
  double log_q = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double pj = std::min(std::max(static_cast<double>(p(j, 0)), kProbClip),
                         1.0 - kProbClip);
    log_q += bits.get(j) ? std::log(pj) : std::log1p(-pj);
  }
  return log_q;
}

template <class Scalar>
void pack_sample(const LabeledSample& s, std::size_t n_gamma,
                 std::size_t n_sector, NnMatrix<Scalar>& out,
                 Eigen::Index column) {
  if (s.gamma.size() != n_gamma || s.beta.size() != n_sector)
    throw std::invalid_argument(
        "pack_sample: sample dimensions do not match the model");
  for (std::size_t i = 0; i < n_gamma; ++i)
    out(static_cast<Eigen::Index>(i), column) =
        s.gamma.get(i) ? Scalar(1) : Scalar(0);
  for (std::size_t i = 0; i < n_sector; ++i)
    out(static_cast<Eigen::Index>(n_gamma + i), column) =
        s.beta.get(i) ? Scalar(1) : Scalar(0);
}

template <class Scalar>
TrainedMade<Scalar> train_made(const MadeConfig& config,
                               std::uint64_t fingerprint,
                               const SampleStream& stream,
                               const TrainLogHook& on_log) {
  TrainedMade<Scalar> out;
  out.net = MadeNet<Scalar>::initialize(config, fingerprint);
  if (config.train_steps == 0) return out;

  AdamState<Scalar> adam(out.net.net);
  Gradients<Scalar> grads(out.net.net);
  typename DenseNet<Scalar>::Trace trace;
  NnMatrix<Scalar> x(static_cast<Eigen::Index>(config.n_in()),
                     static_cast<Eigen::Index>(config.batch_size));

  for (std::size_t step = 1; step <= config.train_steps; ++step) {
    for (std::size_t col = 0; col < config.batch_size; ++col)
      pack_sample(stream(), config.n_gamma, config.n_sector, x,
                  static_cast<Eigen::Index>(col));
    out.net.net.forward_trace(x, trace);
    const double loss = bce_loss(trace.probs, x);
    backward(out.net.net, trace, x, grads);
    adam.step(out.net.net, grads, config.learning_rate);
    if (step == 1 || step % config.log_every == 0 ||
        step == config.train_steps) {
      out.curve.push_back({step, loss});
      if (on_log) on_log(out.curve.back());
    }
  }
  return out;
}

template <class Scalar>
double nll_loss(const MadeNet<Scalar>& net,
                const std::vector<LabeledSample>& batch) {
  if (batch.empty()) throw std::invalid_argument("nll_loss: empty batch");
  NnMatrix<Scalar> x(static_cast<Eigen::Index>(net.config.n_in()),
                     static_cast<Eigen::Index>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i)
    pack_sample(batch[i], net.config.n_gamma, net.config.n_sector, x,
                static_cast<Eigen::Index>(i));
  return bce_loss(net.net.forward(x), x);
}

double smoothed_loss(const std::vector<TrainLogEntry>& curve, double alpha) {
  if (curve.empty())
    throw std::invalid_argument("smoothed_loss: empty curve");
  double ema = curve.front().loss;
  for (const auto& e : curve) ema += alpha * (e.loss - ema);
  return ema;
}

template struct MadeNet<double>;
template struct MadeNet<float>;
template TrainedMade<double> train_made<double>(const MadeConfig&,
                                                std::uint64_t,
                                                const SampleStream&,
                                                const TrainLogHook&);
template TrainedMade<float> train_made<float>(const MadeConfig&,
                                              std::uint64_t,
                                              const SampleStream&,
                                              const TrainLogHook&);
template double nll_loss<double>(const MadeNet<double>&,
                                 const std::vector<LabeledSample>&);
template double nll_loss<float>(const MadeNet<float>&,
                                const std::vector<LabeledSample>&);
template void pack_sample<double>(const LabeledSample&, std::size_t,
                                  std::size_t, NnMatrix<double>&,
                                  Eigen::Index);
template void pack_sample<float>(const LabeledSample&, std::size_t,
                                 std::size_t, NnMatrix<float>&, Eigen::Index);

}  // namespace gnd
