#pragma once

// Checkpoint container: 8-byte magic "GNDCKPT1", a little-endian uint64
// JSON header length, the JSON header (kind, config, fingerprint, tensor
// manifest with shapes and dtype), then raw little-endian IEEE-754 blobs in
// manifest order (column-major within each tensor).

#include <filesystem>
#include <variant>

#include "gnd/made.hpp"
#include "gnd/mnd.hpp"

namespace gnd {

class CheckpointError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void save_checkpoint(const MadeNet<double>& net,
                     const std::filesystem::path& path);
void save_checkpoint(const MadeNet<float>& net,
                     const std::filesystem::path& path);
void save_checkpoint(const MndNet<double>& net,
                     const std::filesystem::path& path);
void save_checkpoint(const MndNet<float>& net,
                     const std::filesystem::path& path);

using AnyNet = std::variant<MadeNet<double>, MadeNet<float>, MndNet<double>,
                            MndNet<float>>;

// Throws CheckpointError on bad magic, version mismatch, manifest/blob
// disagreement, or truncation. If expected_fingerprint is nonzero it must
// match the stored fingerprint (refuses checkpoints trained on a different
// code or DEM).
AnyNet load_checkpoint(const std::filesystem::path& path,
                       std::uint64_t expected_fingerprint = 0);

// Header summary without loading tensors, for `--info` style output.
struct CheckpointSummary {
  std::string kind;            // "made" or "mnd"
  Precision precision = Precision::Double;
  std::uint64_t fingerprint = 0;
  std::size_t n_gamma = 0, n_sector = 0, depth = 0;
  std::size_t parameters = 0;  // effective (unmasked) parameter count
};
CheckpointSummary checkpoint_summary(const std::filesystem::path& path);

}  // namespace gnd
