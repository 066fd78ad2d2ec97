#pragma once

// Code-capacity noise models: i.i.d. Pauli noise on data qubits with perfect
// syndrome extraction. Each model can sample errors and score them, which is
// all the decoders need.

#include <optional>
#include <variant>

#include "gnd/rng.hpp"
#include "gnd/stabilizer_code.hpp"

namespace gnd {

// Each qubit independently suffers X, Y or Z with probability p/3 each.
struct DepolarizingModel {
  double p = 0.0;
};

// Independent X and Z flips, each with probability p (Y = both, p^2).
struct IndependentXZModel {
  double p = 0.0;
};

using NoiseModel = std::variant<DepolarizingModel, IndependentXZModel>;

// Throws std::invalid_argument unless 0 <= p < 1 (and p <= 3/4 for the
// depolarizing channel, past which "error" stops being the rare case).
void validate_model(const NoiseModel& model);

PauliOperator sample_error(const NoiseModel& model, std::size_t n,
                           CounterRng& rng);

// log P(e) under the model; -inf where impossible (e.g. any error at p=0).
double error_log_probability(const NoiseModel& model, const PauliOperator& e);

// One sampled error expressed in frame coordinates. alpha is present for
// code-capacity samples and absent for detector-model samples.
struct LabeledSample {
  std::optional<BinaryVector> alpha;
  BinaryVector beta;
  BinaryVector gamma;
};

LabeledSample sample_code_capacity(const ElsFrame& frame,
                                   const NoiseModel& model, CounterRng& rng);

}  // namespace gnd
