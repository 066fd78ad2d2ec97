#pragma once

// Marginal neural decoding: one forward pass, independent 0.5 thresholds.

#include "gnd/decoder.hpp"
#include "gnd/mnd.hpp"

namespace gnd {

template <class Scalar>
class MndDecoder : public Decoder {
public:
  MndDecoder(MndNet<Scalar> net, std::uint64_t expected_fingerprint);

  const std::string& name() const override { return name_; }
  std::size_t syndrome_bits() const override { return net_.config.n_gamma; }
  std::size_t sector_bits() const override { return net_.config.n_sector; }
  DecodeResult decode(const BinaryVector& gamma) const override;

  const MndNet<Scalar>& net() const { return net_; }

private:
  MndNet<Scalar> net_;
  std::string name_ = "mnd";
};

extern template class MndDecoder<double>;
extern template class MndDecoder<float>;

}  // namespace gnd
