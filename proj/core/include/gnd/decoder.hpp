#pragma once

// Common decoder interface: syndrome in, sector estimate out. Decoders are
// immutable after construction; decode() is safe to call concurrently.

#include <memory>
#include <string>
#include <vector>

#include "gnd/stabilizer_code.hpp"

namespace gnd {

struct DecodeResult {
  BinaryVector beta_hat;
  // GND only: the per-step conditional p(bit=1 | prefix) values that the
  // argmax walked through, in sector-bit order.
  std::vector<double> conditionals;
  // Wall time spent inside decode(), excluding any caller-side sampling.
  double seconds = 0.0;
};

class Decoder {
public:
  virtual ~Decoder() = default;
  virtual const std::string& name() const = 0;
  virtual std::size_t syndrome_bits() const = 0;
  virtual std::size_t sector_bits() const = 0;
  virtual DecodeResult decode(const BinaryVector& gamma) const = 0;
};

// beta block of e_hat, after checking that e_hat actually produces the
// syndrome it claims to explain. Throws ContractViolation otherwise. Turns
// error-estimating decoders into sector decoders.
BinaryVector decoder_logical_projection(const ElsFrame& frame,
                                        const PauliOperator& e_hat,
                                        const BinaryVector& gamma);

}  // namespace gnd
