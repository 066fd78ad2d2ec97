#pragma once

// Detector error models: lists of independent error mechanisms, each firing
// with a probability and flipping a set of detectors (syndrome bits) and
// logical observables (sector bits). This is the circuit-level noise input;
// files come from external circuit tools, this library only ingests them.
//
// Text format (one statement per line, '#' comments):
//
//   error(0.125) D0 D1 L0       mechanism: p, detector and observable targets
//   detector D7                 declares a detector index (existence only)
//   logical_observable L1       declares an observable index
//   shift_detectors 3           adds 3 to all later D indices (cumulative)

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gnd/noise.hpp"
#include "gnd/rng.hpp"

namespace gnd {

struct ErrorMechanism {
  double probability = 0.0;
  std::vector<std::uint32_t> detectors;    // sorted, unique
  std::vector<std::uint32_t> observables;  // sorted, unique

  bool operator==(const ErrorMechanism&) const = default;
};

struct DetectorErrorModel {
  std::uint32_t num_detectors = 0;
  std::uint32_t num_observables = 0;
  std::vector<ErrorMechanism> mechanisms;

  bool operator==(const DetectorErrorModel&) const = default;
};

struct DemParseResult {
  DetectorErrorModel model;
  std::vector<std::string> warnings;  // e.g. cancelled duplicate targets
};

// Throws ParseError on malformed statements, probabilities outside (0,1),
// or unknown keywords. Duplicate targets within one mechanism cancel in
// pairs (XOR semantics) with a warning.
DemParseResult parse_dem_verbose(std::string_view text);
DetectorErrorModel parse_dem(std::string_view text);

// Canonical form: mechanisms in input order with sorted targets, absolute
// indices, no shifts, probabilities at 17 significant digits, followed by
// declarations pinning num_detectors / num_observables. parse(serialize(x))
// reproduces x exactly.
std::string serialize_dem(const DetectorErrorModel& dem);

DetectorErrorModel load_dem_file(const std::filesystem::path& path);
void save_dem_file(const DetectorErrorModel& dem,
                   const std::filesystem::path& path);

// Each mechanism fires independently; gamma = XOR of fired detector sets,
// beta = XOR of fired observable sets, alpha absent. Consumes exactly one
// draw per mechanism.
LabeledSample sample_dem(const DetectorErrorModel& dem, CounterRng& rng);

// Analytic P(gamma_i = 1) = (1 - prod_{mechanisms hitting i} (1-2p)) / 2.
std::vector<double> dem_detector_marginals(const DetectorErrorModel& dem);

std::uint64_t dem_fingerprint(const DetectorErrorModel& dem);

}  // namespace gnd
