#include "gnd/decoder_mld.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <limits>

namespace gnd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Raw word image of a Pauli for tight inner loops.
struct PackedPauli {
  std::vector<std::uint64_t> x, z;
  explicit PackedPauli(const PauliOperator& p)
      : x(p.x.words().begin(), p.x.words().end()),
        z(p.z.words().begin(), p.z.words().end()) {}
};

}  // namespace

ExactMldDecoder::ExactMldDecoder(ElsFrame frame, NoiseModel model,
                                 std::uint64_t step_budget)
    : frame_(std::move(frame)), model_(std::move(model)) {
  validate_model(model_);
  const std::size_t m = frame_.m(), k = frame_.k();
  if (m + 2 * k >= 63)
    throw BudgetExceeded(std::numeric_limits<std::uint64_t>::max(),
                         step_budget);
  const std::uint64_t steps = std::uint64_t{1} << (m + 2 * k);
  if (steps > step_budget) throw BudgetExceeded(steps, step_budget);

  depolarizing_ = std::holds_alternative<DepolarizingModel>(model_);
  const std::size_t n = frame_.n();
  const std::size_t max_stat = depolarizing_ ? n : 2 * n;
  log_term_.resize(max_stat + 1);
  if (depolarizing_) {
    const double p = std::get<DepolarizingModel>(model_).p;
    for (std::size_t w = 0; w <= max_stat; ++w)
      log_term_[w] = (p == 0.0 && w > 0)
                         ? kNegInf
                         : static_cast<double>(n - w) * std::log1p(-p) +
                               static_cast<double>(w) *
                                   (p == 0.0 ? 0.0 : std::log(p / 3.0));
  } else {
    const double p = std::get<IndependentXZModel>(model_).p;
    for (std::size_t w = 0; w <= max_stat; ++w)
      log_term_[w] = (p == 0.0 && w > 0)
                         ? kNegInf
                         : static_cast<double>(2 * n - w) * std::log1p(-p) +
                               static_cast<double>(w) *
                                   (p == 0.0 ? 0.0 : std::log(p));
  }
}

std::vector<double> ExactMldDecoder::sector_log_probs(
    const BinaryVector& gamma) const {
  const std::size_t m = frame_.m(), k = frame_.k();
  if (gamma.size() != m)
    throw std::invalid_argument("ExactMldDecoder: syndrome length mismatch");

  std::vector<PackedPauli> gens;
  gens.reserve(m);
  for (const auto& g : frame_.code.stabilizers) gens.emplace_back(g);

  // Coset anchor explaining the syndrome with no logical content.
  PauliOperator base(frame_.n());
  for (std::size_t i = 0; i < m; ++i)
    if (gamma.get(i)) base = base * frame_.pure_errors[i];

  const std::size_t words = base.x.words().size();
  std::vector<std::uint64_t> hist(log_term_.size());
  std::vector<std::uint64_t> ex(words), ez(words);

  auto weight_stat = [&]() {
    std::size_t s = 0;
    if (depolarizing_)
      for (std::size_t w = 0; w < words; ++w)
        s += static_cast<std::size_t>(std::popcount(ex[w] | ez[w]));
    else
      for (std::size_t w = 0; w < words; ++w)
        s += static_cast<std::size_t>(std::popcount(ex[w]) +
                                      std::popcount(ez[w]));
    return s;
  };

  std::vector<double> out;
  out.reserve(std::size_t{1} << (2 * k));
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << (2 * k)); ++c) {
    // Lexicographic order: beta bit j is bit (2k-1-j) of the counter.
    PauliOperator seed = base;
    for (std::size_t j = 0; j < 2 * k; ++j)
      if ((c >> (2 * k - 1 - j)) & 1) seed = seed * frame_.logicals[j];

    std::fill(hist.begin(), hist.end(), 0);
    std::copy(seed.x.words().begin(), seed.x.words().end(), ex.begin());
    std::copy(seed.z.words().begin(), seed.z.words().end(), ez.begin());
    ++hist[weight_stat()];
    for (std::uint64_t a = 1; a < (std::uint64_t{1} << m); ++a) {
      const auto flip = static_cast<std::size_t>(std::countr_zero(a));
      for (std::size_t w = 0; w < words; ++w) {
        ex[w] ^= gens[flip].x[w];
        ez[w] ^= gens[flip].z[w];
      }
      ++hist[weight_stat()];
    }

    // log-sum-exp over at most (max weight + 1) aggregated terms.
    double peak = kNegInf;
    for (std::size_t w = 0; w < hist.size(); ++w)
      if (hist[w]) {
        const double t =
            std::log(static_cast<double>(hist[w])) + log_term_[w];
        if (t > peak) peak = t;
      }
    double acc = 0;
    if (peak != kNegInf)
      for (std::size_t w = 0; w < hist.size(); ++w)
        if (hist[w])
          acc += std::exp(std::log(static_cast<double>(hist[w])) +
                          log_term_[w] - peak);
    out.push_back(peak == kNegInf ? kNegInf : peak + std::log(acc));
  }
  return out;
}

DecodeResult ExactMldDecoder::decode(const BinaryVector& gamma) const {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t k = frame_.k();
  std::vector<double> logp = sector_log_probs(gamma);
  std::size_t best = 0;
  for (std::size_t c = 1; c < logp.size(); ++c)
    if (logp[c] > logp[best]) best = c;  // strict: ties keep the smaller c

  DecodeResult res;
  res.beta_hat = BinaryVector(2 * k);
  for (std::size_t j = 0; j < 2 * k; ++j)
    if ((best >> (2 * k - 1 - j)) & 1) res.beta_hat.set(j, true);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  return res;
}

}  // namespace gnd
