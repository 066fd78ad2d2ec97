#pragma once

// Masked autoregressive density estimator over the concatenated bit string
// (gamma_1..gamma_m, beta_1..beta_2k). Output i is the model's probability
// that bit i is 1 given bits 0..i-1; the masks make that conditioning
// structural, so the model is exactly normalized over all 2^{n_in} strings.

#include <functional>
#include <string>

#include "gnd/nn.hpp"
#include "gnd/noise.hpp"

namespace gnd {

enum class Precision { Double, Single };

struct MadeConfig {
  std::size_t n_gamma = 0;   // syndrome bits, first in the ordering
  std::size_t n_sector = 0;  // sector bits, after all syndrome bits
  std::size_t depth = 2;     // hidden layer count
  std::size_t width = 8;     // hidden units per input variable
  double learning_rate = 1e-3;
  std::size_t batch_size = 512;
  std::size_t train_steps = 20000;
  std::uint64_t seed = 1;
  Precision precision = Precision::Double;
  std::size_t log_every = 50;

  std::size_t n_in() const { return n_gamma + n_sector; }
  std::size_t hidden_size() const { return width * n_in(); }
  void validate() const;
};

// Connectivity masks plus the hidden-unit degree labels they were built
// from. Hidden degrees cycle through 1..n_in-1, so every conditional keeps
// roughly the same capacity. Pure function of the config dimensions.
struct MadeMasks {
  std::vector<BinaryMatrix> masks;   // one per weight matrix, depth+1 total
  std::vector<std::size_t> degrees;  // hidden-unit degrees (same every layer)
};
MadeMasks build_masks(const MadeConfig& config);

template <class Scalar>
struct MadeNet {
  MadeConfig config;
  std::uint64_t fingerprint = 0;  // hash of the generating code or DEM
  DenseNet<Scalar> net;

  // Fresh masked network with seeded initialization (rng stream 0).
  static MadeNet initialize(const MadeConfig& config, std::uint64_t fingerprint);

  // Per-position probabilities for a batch of {0,1} inputs (n_in x B).
  NnMatrix<Scalar> forward(const NnMatrix<Scalar>& bits) const {
    return net.forward(bits);
  }

  // p(bit_position = 1 | bits[0..position-1]). Suffix bits are zero-padded
  // internally; by causality they cannot matter.
  double conditional(const BinaryVector& bits, std::size_t position) const;

  // log q(bits) for one full string, from a single forward pass.
  double log_score(const BinaryVector& bits) const;
};

using SampleStream = std::function<LabeledSample()>;

struct TrainLogEntry {
  std::size_t step = 0;
  double loss = 0;
};

template <class Scalar>
struct TrainedMade {
  MadeNet<Scalar> net;
  std::vector<TrainLogEntry> curve;
};

// Called with every loss-curve entry as training runs, for progress output.
using TrainLogHook = std::function<void(const TrainLogEntry&)>;

// Fresh samples every minibatch (no dataset), NLL loss, Adam. Deterministic
// given (config, fingerprint, stream behavior).
template <class Scalar>
TrainedMade<Scalar> train_made(const MadeConfig& config,
                               std::uint64_t fingerprint,
                               const SampleStream& stream,
                               const TrainLogHook& on_log = {});

// Mean NLL of a batch under the net (the training loss on that batch).
template <class Scalar>
double nll_loss(const MadeNet<Scalar>& net,
                const std::vector<LabeledSample>& batch);

// Exponentially smoothed final value of a loss curve.
double smoothed_loss(const std::vector<TrainLogEntry>& curve,
                     double alpha = 0.05);

// Packs (gamma, beta) into the model's input ordering.
template <class Scalar>
void pack_sample(const LabeledSample& s, std::size_t n_gamma,
                 std::size_t n_sector, NnMatrix<Scalar>& out,
                 Eigen::Index column);

extern template struct MadeNet<double>;
extern template struct MadeNet<float>;
extern template TrainedMade<double> train_made<double>(const MadeConfig&,
                                                       std::uint64_t,
                                                       const SampleStream&,
                                                       const TrainLogHook&);
extern template TrainedMade<float> train_made<float>(const MadeConfig&,
                                                     std::uint64_t,
                                                     const SampleStream&,
                                                     const TrainLogHook&);
extern template double nll_loss<double>(const MadeNet<double>&,
                                        const std::vector<LabeledSample>&);
extern template double nll_loss<float>(const MadeNet<float>&,
                                       const std::vector<LabeledSample>&);

}  // namespace gnd
