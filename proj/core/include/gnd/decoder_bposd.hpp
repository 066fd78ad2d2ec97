#pragma once

// BP with OSD fallback, projected to a sector estimate. BP runs first; if
// it fails to satisfy the syndrome, OSD post-processing (combination sweep
// by default) repairs the estimate using BP's posteriors as reliabilities.

#include <atomic>

#include "gnd/bp.hpp"
#include "gnd/decoder.hpp"
#include "gnd/osd.hpp"

namespace gnd {

class BposdDecoder : public Decoder {
public:
  BposdDecoder(ElsFrame frame, NoiseModel model, BpConfig bp_config = {},
               OsdMode osd_mode = OsdMode::CombinationSweep,
               std::size_t osd_sweep_depth = 10);

  const std::string& name() const override { return name_; }
  std::size_t syndrome_bits() const override { return frame_.m(); }
  std::size_t sector_bits() const override { return 2 * frame_.k(); }
  DecodeResult decode(const BinaryVector& gamma) const override;

  // The physical error estimate behind the sector answer (testing hook).
  PauliOperator decode_error(const BinaryVector& gamma) const;

  std::uint64_t osd_invocations() const { return osd_calls_.load(); }

private:
  ElsFrame frame_;
  BpEngine engine_;
  std::vector<double> prior_llr_;
  BpConfig bp_config_;
  OsdMode osd_mode_;
  std::size_t osd_sweep_depth_;
  std::string name_ = "bposd";
  mutable std::atomic<std::uint64_t> osd_calls_{0};
};

}  // namespace gnd
