#pragma once

// Exact maximum-likelihood decoding by brute-force coset sums: for every
// sector beta, sum the model probability of all 2^m errors compose(alpha,
// beta, gamma) and pick the argmax. The alpha sweep walks a Gray code, so
// each step is one generator multiplication and a weight update. Costs
// 2^m * 4^k steps per syndrome; construction refuses codes beyond the step
// budget.

#include "gnd/decoder.hpp"
#include "gnd/noise.hpp"

namespace gnd {

class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("exact MLD needs " + std::to_string(required) +
                           " enumeration steps per syndrome, over the budget " +
                           std::to_string(budget)),
        required_(required) {}
  std::uint64_t required() const { return required_; }

private:
  std::uint64_t required_;
};

class ExactMldDecoder : public Decoder {
public:
  ExactMldDecoder(ElsFrame frame, NoiseModel model,
                  std::uint64_t step_budget = std::uint64_t{1} << 27);

  const std::string& name() const override { return name_; }
  std::size_t syndrome_bits() const override { return frame_.m(); }
  std::size_t sector_bits() const override { return 2 * frame_.k(); }

  // Ties (equal coset probability) resolve to the lexicographically
  // smallest beta, comparing bits left to right.
  DecodeResult decode(const BinaryVector& gamma) const override;

  // log of the summed coset probability for every sector, in lexicographic
  // beta order (index built by reading beta bits as a big-endian integer).
  std::vector<double> sector_log_probs(const BinaryVector& gamma) const;

  const ElsFrame& frame() const { return frame_; }

private:
  ElsFrame frame_;
  NoiseModel model_;
  std::vector<double> log_term_;  // log prob with given weight statistic
  bool depolarizing_ = true;
  std::string name_ = "mld";
};

}  // namespace gnd
