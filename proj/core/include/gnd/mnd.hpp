#pragma once

// Marginal neural decoder baseline: a plain MLP mapping the syndrome to 2k
// independent per-bit sector probabilities. No conditioning among sector
// bits — this is the mean-field counterpart of the autoregressive model.

#include "gnd/made.hpp"

namespace gnd {

struct MndConfig {
  std::size_t n_gamma = 0;   // inputs
  std::size_t n_sector = 0;  // outputs
  std::size_t depth = 2;     // hidden layer count
  std::size_t hidden = 64;   // units per hidden layer (explicit, for
                             // parameter-budget matching against MADE)
  double learning_rate = 1e-3;
  std::size_t batch_size = 512;
  std::size_t train_steps = 20000;
  std::uint64_t seed = 1;
  Precision precision = Precision::Double;
  std::size_t log_every = 50;

  void validate() const;
};

template <class Scalar>
struct MndNet {
  MndConfig config;
  std::uint64_t fingerprint = 0;
  DenseNet<Scalar> net;

  static MndNet initialize(const MndConfig& config, std::uint64_t fingerprint);

  // 2k marginal probabilities given the syndrome.
  NnVector<Scalar> forward(const BinaryVector& gamma) const;
};

template <class Scalar>
struct TrainedMnd {
  MndNet<Scalar> net;
  std::vector<TrainLogEntry> curve;
};

// Per-output binary cross-entropy on (gamma -> beta) pairs, Adam, fresh
// samples each minibatch.
template <class Scalar>
TrainedMnd<Scalar> train_mnd(const MndConfig& config, std::uint64_t fingerprint,
                             const SampleStream& stream,
                             const TrainLogHook& on_log = {});

extern template struct MndNet<double>;
extern template struct MndNet<float>;
extern template TrainedMnd<double> train_mnd<double>(const MndConfig&,
                                                     std::uint64_t,
                                                     const SampleStream&,
                                                     const TrainLogHook&);
extern template TrainedMnd<float> train_mnd<float>(const MndConfig&,
                                                   std::uint64_t,
                                                   const SampleStream&,
                                                   const TrainLogHook&);

}  // namespace gnd
