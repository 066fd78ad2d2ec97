#include "gnd/decoder_gnd.hpp"

#include <chrono>
#include <stdexcept>

namespace gnd {

template <class Scalar>
GndDecoder<Scalar>::GndDecoder(MadeNet<Scalar> net,
                               std::uint64_t expected_fingerprint)
    : net_(std::move(net)) {
  if (expected_fingerprint != 0 && net_.fingerprint != expected_fingerprint)
    throw std::invalid_argument(
        "GndDecoder: network fingerprint does not match the target code/DEM");
  if (net_.config.n_sector == 0)
    throw std::invalid_argument("GndDecoder: network has no sector bits");
}

template <class Scalar>
DecodeResult GndDecoder<Scalar>::decode(const BinaryVector& gamma) const {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t m = net_.config.n_gamma;
  const std::size_t s = net_.config.n_sector;
  if (gamma.size() != m)
    throw std::invalid_argument("GndDecoder: syndrome length mismatch");

  DecodeResult res;
  res.beta_hat = BinaryVector(s);
  res.conditionals.reserve(s);

  NnMatrix<Scalar> x =
      NnMatrix<Scalar>::Zero(static_cast<Eigen::Index>(m + s), 1);
  for (std::size_t i = 0; i < m; ++i)
    if (gamma.get(i)) x(static_cast<Eigen::Index>(i), 0) = Scalar(1);

  for (std::size_t i = 0; i < s; ++i) {
    NnMatrix<Scalar> probs = net_.net.forward(x);
    forward_passes_.fetch_add(1, std::memory_order_relaxed);
    const double p =
        static_cast<double>(probs(static_cast<Eigen::Index>(m + i), 0));
    res.conditionals.push_back(p);
    if (p > 0.5) {  // exact tie keeps the bit at 0
      res.beta_hat.set(i, true);
      x(static_cast<Eigen::Index>(m + i), 0) = Scalar(1);
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  return res;
}

template class GndDecoder<double>;
template class GndDecoder<float>;

}  // namespace gnd
