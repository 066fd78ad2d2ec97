#include "gnd/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gnd {

void validate_model(const NoiseModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if (!(m.p >= 0.0) || m.p >= 1.0)
          throw std::invalid_argument("noise model: p must be in [0, 1)");
        if constexpr (std::is_same_v<T, DepolarizingModel>) {
          if (m.p > 0.75)
            throw std::invalid_argument(
                "depolarizing model: p > 3/4 inverts the channel");
        }
      },
      model);
}

PauliOperator sample_error(const NoiseModel& model, std::size_t n,
                           CounterRng& rng) {
  validate_model(model);
  PauliOperator e(n);
  if (const auto* dep = std::get_if<DepolarizingModel>(&model)) {
    // One draw per qubit: the same uniform decides both whether an error
    // happens and which of X/Y/Z it is, so the stream advances by exactly n
    // regardless of outcomes.
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.next_double();
      if (u >= dep->p) continue;
      const int type = std::min(2, static_cast<int>(3.0 * u / dep->p));
      if (type != 2) e.x.set(i, true);  // X or Y
      if (type != 0) e.z.set(i, true);  // Y or Z
    }
  } else {
    const auto& xz = std::get<IndependentXZModel>(model);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.next_double() < xz.p) e.x.set(i, true);
      if (rng.next_double() < xz.p) e.z.set(i, true);
    }
  }
  return e;
}

double error_log_probability(const NoiseModel& model, const PauliOperator& e) {
  validate_model(model);
  const double n = static_cast<double>(e.num_qubits());
  if (const auto* dep = std::get_if<DepolarizingModel>(&model)) {
    const double w = static_cast<double>(pauli_weight(e));
    if (dep->p == 0.0)
      return w == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return (n - w) * std::log1p(-dep->p) + w * std::log(dep->p / 3.0);
  }
  const auto& xz = std::get<IndependentXZModel>(model);
  const double w =
      static_cast<double>(e.x.popcount() + e.z.popcount());  // bit flips
  if (xz.p == 0.0)
    return w == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return (2.0 * n - w) * std::log1p(-xz.p) + w * std::log(xz.p);
}

LabeledSample sample_code_capacity(const ElsFrame& frame,
                                   const NoiseModel& model, CounterRng& rng) {
  PauliOperator e = sample_error(model, frame.n(), rng);
  ElsConfig cfg = decompose_error(frame, e);
  return LabeledSample{std::move(cfg.alpha), std::move(cfg.beta),
                       std::move(cfg.gamma)};
}

}  // namespace gnd
