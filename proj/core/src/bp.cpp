#include "gnd/bp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gnd {

namespace {
// Message magnitudes are clamped so long unconverged runs cannot overflow.
constexpr double kLlrCap = 50.0;
}  // namespace

BpEngine::BpEngine(const BinaryMatrix& h)
    : h_(h), checks_(h.rows()), vars_(h.cols()), check_vars_(checks_),
      var_edges_(vars_) {
  for (std::size_t c = 0; c < checks_; ++c)
    for (std::size_t v = 0; v < vars_; ++v)
      if (h.get(c, v)) {
        var_edges_[v].emplace_back(c, check_vars_[c].size());
        check_vars_[c].push_back(v);
      }
}

BpResult BpEngine::run(const std::vector<double>& prior_llr,
                       const BinaryVector& syndrome,
                       const BpConfig& config) const {
  if (prior_llr.size() != vars_)
    throw std::invalid_argument("BpEngine: prior length mismatch");
  if (syndrome.size() != checks_)
    throw std::invalid_argument("BpEngine: syndrome length mismatch");

  // Messages live on edges, addressed check-major.
  std::vector<std::vector<double>> var_to_check(checks_), check_to_var(checks_);
  for (std::size_t c = 0; c < checks_; ++c) {
    var_to_check[c].resize(check_vars_[c].size());
    check_to_var[c].assign(check_vars_[c].size(), 0.0);
    for (std::size_t s = 0; s < check_vars_[c].size(); ++s)
      var_to_check[c][s] = prior_llr[check_vars_[c][s]];
  }

  BpResult res;
  res.e_hat = BinaryVector(vars_);
  res.posterior_llr.assign(prior_llr.begin(), prior_llr.end());

  auto hard_decide = [&]() {
    for (std::size_t v = 0; v < vars_; ++v)
      res.e_hat.set(v, res.posterior_llr[v] < 0.0);
  };
  auto satisfied = [&]() {
    return gf2_matvec(h_, res.e_hat) == syndrome;
  };

  if (satisfied()) {  // e.g. all-zero syndrome with positive priors
    res.converged = true;
    return res;
  }

  for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
    // Check update: sign from the syndrome bit and the other vars, magnitude
    // from the two smallest incoming magnitudes (min-sum with scaling).
    for (std::size_t c = 0; c < checks_; ++c) {
      const auto& vs = check_vars_[c];
      double min1 = HUGE_VAL, min2 = HUGE_VAL;
      std::size_t arg1 = 0;
      int sign_all = syndrome.get(c) ? -1 : 1;
      for (std::size_t s = 0; s < vs.size(); ++s) {
        const double msg = var_to_check[c][s];
        if (msg < 0) sign_all = -sign_all;
        const double mag = std::fabs(msg);
        if (mag < min1) {
          min2 = min1;
          min1 = mag;
          arg1 = s;
        } else if (mag < min2) {
          min2 = mag;
        }
      }
      for (std::size_t s = 0; s < vs.size(); ++s) {
        const double msg = var_to_check[c][s];
        const int sign_rest = (msg < 0) ? -sign_all : sign_all;
        const double mag_rest = (s == arg1) ? min2 : min1;
        check_to_var[c][s] = config.norm_factor * sign_rest * mag_rest;
      }
    }

    // Var update and posterior.
    for (std::size_t v = 0; v < vars_; ++v) {
      double total = prior_llr[v];
      for (const auto& [c, slot] : var_edges_[v]) total += check_to_var[c][slot];
      res.posterior_llr[v] = total;
      for (const auto& [c, slot] : var_edges_[v]) {
        double out = total - check_to_var[c][slot];
        out = std::clamp(out, -kLlrCap, kLlrCap);
        var_to_check[c][slot] = out;
      }
    }

    res.iterations = iter;
    hard_decide();
    if (satisfied()) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

BpResult bp_min_sum(const BinaryMatrix& h, const std::vector<double>& prior_llr,
                    const BinaryVector& syndrome, const BpConfig& config) {
  return BpEngine(h).run(prior_llr, syndrome, config);
}

BpSystem build_bp_system(const StabilizerCode& code, const NoiseModel& model) {
  validate_model(model);
  const std::size_t n = code.n, m = code.stabilizers.size();
  BpSystem sys;
  sys.h = BinaryMatrix(m, 2 * n);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& g = code.stabilizers[r];
    for (std::size_t q = 0; q < n; ++q) {
      if (g.z.get(q)) sys.h.set(r, q, true);          // couples to e_x
      if (g.x.get(q)) sys.h.set(r, n + q, true);      // couples to e_z
    }
  }
  // Per-bit marginal flip probabilities, independence approximation: under
  // depolarizing noise the x bit flips for X or Y errors (2p/3), same for z.
  double q = 0;
  if (const auto* dep = std::get_if<DepolarizingModel>(&model))
    q = 2.0 * dep->p / 3.0;
  else
    q = std::get<IndependentXZModel>(model).p;
  if (q <= 0.0)
    throw std::invalid_argument("build_bp_system: p must be positive for BP");
  sys.prior_llr.assign(2 * n, std::log((1.0 - q) / q));
  return sys;
}

PauliOperator bp_bits_to_pauli(const BinaryVector& bits) {
  if (bits.size() % 2 != 0)
    throw std::invalid_argument("bp_bits_to_pauli: odd bit count");
  const std::size_t n = bits.size() / 2;
  PauliOperator p(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (bits.get(q)) p.x.set(q, true);
    if (bits.get(n + q)) p.z.set(q, true);
  }
  return p;
}

}  // namespace gnd
