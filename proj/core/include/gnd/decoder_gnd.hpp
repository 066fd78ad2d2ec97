#pragma once

// Generative neural decoding: sequential conditional argmax through the
// autoregressive model. Sector bit i is fixed to 1 iff
// p(bit | gamma, earlier sector bits) > 0.5, using exactly one forward pass
// per sector bit (2k total), with later positions zero-padded.

#include <atomic>

#include "gnd/decoder.hpp"
#include "gnd/made.hpp"

namespace gnd {

template <class Scalar>
class GndDecoder : public Decoder {
public:
  // expected_fingerprint guards against nets trained on a different code or
  // DEM (0 skips the check, for hand-built nets in tests).
  GndDecoder(MadeNet<Scalar> net, std::uint64_t expected_fingerprint);

  const std::string& name() const override { return name_; }
  std::size_t syndrome_bits() const override { return net_.config.n_gamma; }
  std::size_t sector_bits() const override { return net_.config.n_sector; }
  DecodeResult decode(const BinaryVector& gamma) const override;

  // Total forward passes across all decode() calls; the decode-cost
  // contract (2k per call) is asserted against this.
  std::uint64_t forward_passes() const { return forward_passes_.load(); }

  const MadeNet<Scalar>& net() const { return net_; }

private:
  MadeNet<Scalar> net_;
  std::string name_ = "gnd";
  mutable std::atomic<std::uint64_t> forward_passes_{0};
};

extern template class GndDecoder<double>;
extern template class GndDecoder<float>;

}  // namespace gnd
