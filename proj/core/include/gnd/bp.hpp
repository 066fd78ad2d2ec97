#pragma once

// Normalized min-sum belief propagation over a binary parity-check system
// H e = s, with per-bit prior log-likelihood ratios llr = log(P0/P1). For
// stabilizer codes the system has 2n columns (x bits then z bits) and row i
// is (g_i.z | g_i.x), so H e equals the syndrome.

#include <vector>

#include "gnd/noise.hpp"
#include "gnd/stabilizer_code.hpp"

namespace gnd {

struct BpConfig {
  std::size_t max_iter = 1000;
  double norm_factor = 0.625;  // min-sum normalization
};

struct BpResult {
  BinaryVector e_hat;
  bool converged = false;             // H e_hat == syndrome reached
  std::vector<double> posterior_llr;  // priors + all check messages
  std::size_t iterations = 0;
};

// Reusable message-passing engine for one parity-check matrix (sparse
// adjacency is extracted once). run() is stateless across calls.
class BpEngine {
public:
  BpEngine() = default;  // empty engine, assign before use
  explicit BpEngine(const BinaryMatrix& h);

  BpResult run(const std::vector<double>& prior_llr,
               const BinaryVector& syndrome, const BpConfig& config) const;

  const BinaryMatrix& matrix() const { return h_; }

private:
  BinaryMatrix h_;
  std::size_t checks_ = 0, vars_ = 0;
  std::vector<std::vector<std::size_t>> check_vars_;  // edge targets
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>>
      var_edges_;  // (check, slot in check_vars_[check])
};

BpResult bp_min_sum(const BinaryMatrix& h, const std::vector<double>& prior_llr,
                    const BinaryVector& syndrome, const BpConfig& config = {});

// The symplectic system plus depolarizing/XZ priors for a code.
struct BpSystem {
  BinaryMatrix h;                 // m x 2n
  std::vector<double> prior_llr;  // 2n
};
BpSystem build_bp_system(const StabilizerCode& code, const NoiseModel& model);

// Interprets a 2n-bit solution (x half, z half) as a Pauli.
PauliOperator bp_bits_to_pauli(const BinaryVector& bits);

}  // namespace gnd
