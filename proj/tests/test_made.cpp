#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "gnd/made.hpp"

using namespace gnd;

namespace {

BinaryVector bits_of(std::uint64_t value, std::size_t n) {
  BinaryVector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, (value >> i) & 1);
  return v;
}

MadeConfig tiny_config() {
  MadeConfig cfg;
  cfg.n_gamma = 3;
  cfg.n_sector = 2;
  cfg.depth = 2;
  cfg.width = 4;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("mask shapes and autoregressive rules") {
  MadeConfig cfg = tiny_config();
  MadeMasks mm = build_masks(cfg);
  const std::size_t n = cfg.n_in(), h = cfg.hidden_size();
  REQUIRE(mm.masks.size() == cfg.depth + 1);
  REQUIRE(mm.degrees.size() == h);
  CHECK(mm.masks[0].rows() == h);
  CHECK(mm.masks[0].cols() == n);
  CHECK(mm.masks[1].rows() == h);
  CHECK(mm.masks[1].cols() == h);
  CHECK(mm.masks[2].rows() == n);
  CHECK(mm.masks[2].cols() == h);

  for (std::size_t d : mm.degrees) {
    CHECK(d >= 1);
    CHECK(d <= n - 1);
  }
  // degrees are balanced: counts differ by at most one
  std::map<std::size_t, std::size_t> hist;
  for (std::size_t d : mm.degrees) ++hist[d];
  CHECK(hist.size() == n - 1);
  std::size_t lo = h, hi = 0;
  for (auto& [d, c] : hist) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(hi - lo <= 1);

  // input mask: unit u sees input i iff i < deg(u)
  for (std::size_t u = 0; u < h; ++u)
    for (std::size_t i = 0; i < n; ++i)
      CHECK(mm.masks[0].get(u, i) == (i < mm.degrees[u]));
  // hidden mask: v feeds u iff deg(v) <= deg(u)
  for (std::size_t u = 0; u < h; ++u)
    for (std::size_t v = 0; v < h; ++v)
      CHECK(mm.masks[1].get(u, v) == (mm.degrees[v] <= mm.degrees[u]));
  // output mask: output i hears unit u iff deg(u) <= i
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t u = 0; u < h; ++u)
      CHECK(mm.masks[2].get(i, u) == (mm.degrees[u] <= i));
  // output 0 hears nothing: unconditional bit
  for (std::size_t u = 0; u < h; ++u) CHECK_FALSE(mm.masks[2].get(0, u));
}

TEST_CASE("outputs are causal in the input ordering") {
  MadeNet<double> net = MadeNet<double>::initialize(tiny_config(), 0xfeed);
  const std::size_t n = net.config.n_in();
  CounterRng rng(3, 9);
  for (int t = 0; t < 100; ++t) {
    BinaryVector base(n);
    for (std::size_t i = 0; i < n; ++i) base.set(i, rng.next_double() < 0.5);
    NnMatrix<double> x(n, 1);
    for (std::size_t i = 0; i < n; ++i) x(Eigen::Index(i), 0) = base.get(i);
    NnMatrix<double> p0 = net.forward(x);
    // flipping bit j changes no output at position <= j
    for (std::size_t j = 0; j < n; ++j) {
      NnMatrix<double> xf = x;
      xf(Eigen::Index(j), 0) = 1.0 - xf(Eigen::Index(j), 0);
      NnMatrix<double> pf = net.forward(xf);
      for (std::size_t i = 0; i <= j; ++i)
        CHECK(pf(Eigen::Index(i), 0) == p0(Eigen::Index(i), 0));
    }
  }
}

TEST_CASE("probabilities sum to one over all strings") {
  MadeNet<double> net = MadeNet<double>::initialize(tiny_config(), 0xbeef);
  const std::size_t n = net.config.n_in();
  double total = 0.0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
    total += std::exp(net.log_score(bits_of(v, n)));
  CHECK(std::abs(total - 1.0) <= 1e-10);
}

TEST_CASE("log score equals the chain rule over conditionals") {
  MadeNet<double> net = MadeNet<double>::initialize(tiny_config(), 0x1234);
  const std::size_t n = net.config.n_in();
  CounterRng rng(5, 5);
  for (int t = 0; t < 20; ++t) {
    BinaryVector bits(n);
    for (std::size_t i = 0; i < n; ++i) bits.set(i, rng.next_double() < 0.5);
    double chained = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p1 = net.conditional(bits, i);
      chained += std::log(bits.get(i) ? p1 : 1.0 - p1);
    }
    CHECK(net.log_score(bits) == doctest::Approx(chained).epsilon(1e-12));
  }
}

TEST_CASE("conditional ignores suffix bits") {
  MadeNet<double> net = MadeNet<double>::initialize(tiny_config(), 0x77);
  const std::size_t n = net.config.n_in();
  BinaryVector a(n), b(n);
  a.set(0, true);
  b.set(0, true);
  for (std::size_t i = 2; i < n; ++i) b.set(i, true);  // differ after bit 1
  CHECK(net.conditional(a, 2) != 0.5);  // trained-free net still nontrivial
  CHECK(net.conditional(a, 1) == net.conditional(b, 1));
  CHECK(net.conditional(a, 0) == net.conditional(b, 0));
}

TEST_CASE("initialization is deterministic in config and seed") {
  MadeConfig cfg = tiny_config();
  MadeNet<double> a = MadeNet<double>::initialize(cfg, 0xab);
  MadeNet<double> b = MadeNet<double>::initialize(cfg, 0xab);
  CHECK(a.net.w[0] == b.net.w[0]);
  cfg.seed = 8;
  MadeNet<double> c = MadeNet<double>::initialize(cfg, 0xab);
  CHECK(a.net.w[0] != c.net.w[0]);
}

TEST_CASE("config validation") {
  MadeConfig cfg = tiny_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.n_gamma = 0;
  cfg.n_sector = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = tiny_config();
  cfg.width = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = tiny_config();
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("training fits a deterministic source") {
  // At p = 0 every sample is the all-zero string; the NLL of a perfect fit
  // is 0, and even a short run should get close.
  MadeConfig cfg;
  cfg.n_gamma = 4;
  cfg.n_sector = 2;
  cfg.depth = 1;
  cfg.width = 4;
  cfg.train_steps = 2500;
  cfg.batch_size = 32;
  cfg.learning_rate = 1e-2;
  cfg.seed = 3;
  cfg.log_every = 100;
  SampleStream zeros = [] {
    return LabeledSample{std::nullopt, BinaryVector(2), BinaryVector(4)};
  };
  std::size_t hook_calls = 0;
  TrainedMade<double> out =
      train_made<double>(cfg, 0x9, zeros,
                         [&hook_calls](const TrainLogEntry&) { ++hook_calls; });
  REQUIRE(!out.curve.empty());
  CHECK(hook_calls == out.curve.size());
  CHECK(out.curve.back().step == 2500);
  CHECK(out.curve.back().loss < 0.05);
  CHECK(out.curve.back().loss < out.curve.front().loss);
  CHECK(out.net.log_score(BinaryVector(6)) > std::log(0.95));

  // determinism: the whole run replays bit for bit
  TrainedMade<double> again = train_made<double>(cfg, 0x9, zeros);
  CHECK(again.net.net.w[0] == out.net.net.w[0]);
  CHECK(again.curve.back().loss == out.curve.back().loss);
}

TEST_CASE("float precision trains too") {
  MadeConfig cfg;
  cfg.n_gamma = 3;
  cfg.n_sector = 1;
  cfg.depth = 1;
  cfg.width = 3;
  cfg.train_steps = 800;
  cfg.batch_size = 16;
  cfg.learning_rate = 1e-2;
  cfg.precision = Precision::Single;
  SampleStream zeros = [] {
    return LabeledSample{std::nullopt, BinaryVector(1), BinaryVector(3)};
  };
  TrainedMade<float> out = train_made<float>(cfg, 0x2, zeros);
  CHECK(out.curve.back().loss < 0.2);
}
