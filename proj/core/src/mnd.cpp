#include "gnd/mnd.hpp"

#include <stdexcept>

namespace gnd {

void MndConfig::validate() const {
  if (n_gamma < 1) throw std::invalid_argument("MndConfig: need inputs");
  if (n_sector < 1) throw std::invalid_argument("MndConfig: need outputs");
  if (depth < 1) throw std::invalid_argument("MndConfig: depth must be >= 1");
  if (hidden < 1) throw std::invalid_argument("MndConfig: hidden must be >= 1");
  if (batch_size < 1)
    throw std::invalid_argument("MndConfig: batch_size must be >= 1");
  if (!(learning_rate > 0))
    throw std::invalid_argument("MndConfig: learning_rate must be positive");
}

template <class Scalar>
MndNet<Scalar> MndNet<Scalar>::initialize(const MndConfig& config,
                                          std::uint64_t fingerprint) {
  config.validate();
  MndNet net;
  net.config = config;
  net.fingerprint = fingerprint;
  std::vector<std::size_t> dims(config.depth + 2, config.hidden);
  dims.front() = config.n_gamma;
  dims.back() = config.n_sector;
  CounterRng rng(config.seed, 0);
  net.net.init(dims, rng);
  return net;
}

template <class Scalar>
NnVector<Scalar> MndNet<Scalar>::forward(const BinaryVector& gamma) const {
  if (gamma.size() != config.n_gamma)
    throw std::invalid_argument("MndNet::forward: syndrome length mismatch");
  NnMatrix<Scalar> x(static_cast<Eigen::Index>(config.n_gamma), 1);
  for (std::size_t i = 0; i < config.n_gamma; ++i)
    x(static_cast<Eigen::Index>(i), 0) = gamma.get(i) ? Scalar(1) : Scalar(0);
  return net.forward(x).col(0);
}

template <class Scalar>
TrainedMnd<Scalar> train_mnd(const MndConfig& config, std::uint64_t fingerprint,
                             const SampleStream& stream,
                             const TrainLogHook& on_log) {
  TrainedMnd<Scalar> out;
  out.net = MndNet<Scalar>::initialize(config, fingerprint);
  if (config.train_steps == 0) return out;

  AdamState<Scalar> adam(out.net.net);
  Gradients<Scalar> grads(out.net.net);
  typename DenseNet<Scalar>::Trace trace;
  NnMatrix<Scalar> x(static_cast<Eigen::Index>(config.n_gamma),
                     static_cast<Eigen::Index>(config.batch_size));
  NnMatrix<Scalar> y(static_cast<Eigen::Index>(config.n_sector),
                     static_cast<Eigen::Index>(config.batch_size));

  for (std::size_t step = 1; step <= config.train_steps; ++step) {
    for (std::size_t col = 0; col < config.batch_size; ++col) {
      LabeledSample s = stream();
      if (s.gamma.size() != config.n_gamma ||
          s.beta.size() != config.n_sector)
        throw std::invalid_argument(
            "train_mnd: sample dimensions do not match the model");
      for (std::size_t i = 0; i < config.n_gamma; ++i)
        x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) =
            s.gamma.get(i) ? Scalar(1) : Scalar(0);
      for (std::size_t i = 0; i < config.n_sector; ++i)
        y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) =
            s.beta.get(i) ? Scalar(1) : Scalar(0);
    }
    out.net.net.forward_trace(x, trace);
    const double loss = bce_loss(trace.probs, y);
    backward(out.net.net, trace, y, grads);
    adam.step(out.net.net, grads, config.learning_rate);
    if (step == 1 || step % config.log_every == 0 ||
        step == config.train_steps) {
      out.curve.push_back({step, loss});
      if (on_log) on_log(out.curve.back());
    }
  }
  return out;
}

template struct MndNet<double>;
template struct MndNet<float>;
template TrainedMnd<double> train_mnd<double>(const MndConfig&, std::uint64_t,
                                              const SampleStream&,
                                              const TrainLogHook&);
template TrainedMnd<float> train_mnd<float>(const MndConfig&, std::uint64_t,
                                            const SampleStream&,
                                            const TrainLogHook&);

}  // namespace gnd
