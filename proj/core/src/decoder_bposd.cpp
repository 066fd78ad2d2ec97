#include "gnd/decoder_bposd.hpp"

#include <chrono>

#include "gnd/error.hpp"

namespace gnd {

BposdDecoder::BposdDecoder(ElsFrame frame, NoiseModel model,
                           BpConfig bp_config, OsdMode osd_mode,
                           std::size_t osd_sweep_depth)
    : frame_(std::move(frame)),
      bp_config_(bp_config),
      osd_mode_(osd_mode),
      osd_sweep_depth_(osd_sweep_depth) {
  BpSystem sys = build_bp_system(frame_.code, model);
  engine_ = BpEngine(sys.h);
  prior_llr_ = std::move(sys.prior_llr);
}

PauliOperator BposdDecoder::decode_error(const BinaryVector& gamma) const {
  BpResult bp = engine_.run(prior_llr_, gamma, bp_config_);
  if (bp.converged) return bp_bits_to_pauli(bp.e_hat);
  osd_calls_.fetch_add(1, std::memory_order_relaxed);
  BinaryVector repaired = osd_postprocess(engine_.matrix(), gamma,
                                          bp.posterior_llr, osd_mode_,
                                          osd_sweep_depth_);
  return bp_bits_to_pauli(repaired);
}

DecodeResult BposdDecoder::decode(const BinaryVector& gamma) const {
  const auto t0 = std::chrono::steady_clock::now();
  PauliOperator e_hat = decode_error(gamma);
  DecodeResult res;
  res.beta_hat = decoder_logical_projection(frame_, e_hat, gamma);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  return res;
}

BinaryVector decoder_logical_projection(const ElsFrame& frame,
                                        const PauliOperator& e_hat,
                                        const BinaryVector& gamma) {
  ElsConfig cfg = decompose_error(frame, e_hat);
  if (cfg.gamma != gamma)
    throw ContractViolation(
        "decoder_logical_projection: estimate does not satisfy the syndrome");
  return std::move(cfg.beta);
}

}  // namespace gnd
