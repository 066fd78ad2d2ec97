#pragma once

// Logical-error-rate estimation: Monte Carlo shot loops with Wilson score
// intervals, resumable parameter sweeps, and CSV/JSON/SVG emitters.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gnd/decoder.hpp"
#include "gnd/noise.hpp"
#include "gnd/rng.hpp"

namespace gnd {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval for a binomial proportion. z defaults to the 95%
// two-sided normal quantile.
WilsonInterval wilson_interval(std::size_t failures, std::size_t shots,
                               double z = 1.96);

// Draws the (beta, gamma) pair for a given shot index. Must be a pure
// function of the index so estimates are reproducible and order-independent.
using SectorSampler =
    std::function<std::pair<BinaryVector, BinaryVector>(std::uint64_t shot)>;

// Sampler for code-capacity noise: shot index seeds a counter RNG stream, so
// any subset of shots can be drawn in any order.
SectorSampler code_capacity_sampler(const ElsFrame& frame, NoiseModel model,
                                    std::uint64_t seed);

struct LerPoint {
  std::string decoder;
  std::string code;
  double physical_p = 0.0;
  std::size_t shots = 0;
  std::size_t failures = 0;
  double ler = 0.0;
  WilsonInterval ci;
  double seconds_per_shot = 0.0;  // decode time only, averaged over shots
};

struct EstimateOptions {
  std::size_t shots = 1000;
  std::size_t threads = 1;
  // Reuse the decoder output for repeated syndromes. Worthwhile for exact
  // decoders at small m; timing then reflects only the real decodes.
  bool cache_syndromes = false;
};

// Runs `shots` samples through the decoder and counts beta_hat != beta.
LerPoint estimate_ler(const Decoder& decoder, const SectorSampler& sampler,
                      const EstimateOptions& opts);

// --- sweep configuration ------------------------------------------------

struct DecoderSpec {
  std::string kind;  // "gnd", "mnd", "mld", "bposd"
  std::string label;
  std::string checkpoint;  // gnd/mnd: checkpoint path
  // bposd knobs (defaults match BpConfig/OsdMode defaults)
  int bp_max_iter = 1000;
  double bp_scale = 0.625;
  int osd_order = 10;
  // mld knob
  std::uint64_t step_budget = std::uint64_t{1} << 27;
};

struct ExperimentConfig {
  std::string code_file;
  std::string noise;  // "depolarizing" or "independent_xz"
  std::vector<double> physical_ps;
  std::vector<DecoderSpec> decoders;
  std::size_t shots = 1000;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string out_dir = "bench_out";
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string serialize_experiment_config(const ExperimentConfig& cfg);

struct SweepResult {
  std::vector<LerPoint> points;            // completed rows, config order
  std::vector<std::string> failed_points;  // ids of rows that threw
};

// Runs the full grid (decoder x physical_p). Each completed row is written
// to <out_dir>/rows/<id>.json as it finishes and skipped on re-run, so an
// interrupted sweep resumes where it left off. A row that throws (budget
// exceeded, missing checkpoint) is recorded and the sweep continues.
SweepResult run_sweep(const ExperimentConfig& cfg);

// --- emitters -------------------------------------------------------------

std::string emit_csv(const std::vector<LerPoint>& points);
std::vector<LerPoint> parse_csv(const std::string& csv_text);
std::string emit_json(const std::vector<LerPoint>& points);
std::vector<LerPoint> parse_points_json(const std::string& json_text);

// Self-contained SVG: log-log LER vs physical error rate, one series per
// decoder label (legend follows first-appearance order), Wilson CI bands.
std::string emit_plot(const std::vector<LerPoint>& points,
                      const std::string& title = "");

}  // namespace gnd
