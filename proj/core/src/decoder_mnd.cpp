#include "gnd/decoder_mnd.hpp"

#include <chrono>
#include <stdexcept>

namespace gnd {

template <class Scalar>
MndDecoder<Scalar>::MndDecoder(MndNet<Scalar> net,
                               std::uint64_t expected_fingerprint)
    : net_(std::move(net)) {
  if (expected_fingerprint != 0 && net_.fingerprint != expected_fingerprint)
    throw std::invalid_argument(
        "MndDecoder: network fingerprint does not match the target code");
}

template <class Scalar>
DecodeResult MndDecoder<Scalar>::decode(const BinaryVector& gamma) const {
  const auto t0 = std::chrono::steady_clock::now();
  NnVector<Scalar> p = net_.forward(gamma);
  DecodeResult res;
  res.beta_hat = BinaryVector(net_.config.n_sector);
  for (std::size_t i = 0; i < net_.config.n_sector; ++i)
    if (static_cast<double>(p(static_cast<Eigen::Index>(i))) > 0.5)
      res.beta_hat.set(i, true);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  return res;
}

template class MndDecoder<double>;
template class MndDecoder<float>;

}  // namespace gnd
