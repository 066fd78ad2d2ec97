#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "gnd/mnd.hpp"

using namespace gnd;

namespace {

MndConfig tiny_config() {
  MndConfig cfg;
  cfg.n_gamma = 4;
  cfg.n_sector = 2;
  cfg.depth = 2;
  cfg.hidden = 10;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("network shape follows the config") {
  MndNet<double> net = MndNet<double>::initialize(tiny_config(), 0x1);
  CHECK(net.net.in_dim() == 4);
  CHECK(net.net.out_dim() == 2);
  CHECK(net.net.layers() == 3);  // two hidden layers plus the output layer
  CHECK_FALSE(net.net.masked());
  // 4*10+10, 10*10+10, 10*2+2
  CHECK(net.net.parameter_count(true) == 50 + 110 + 22);
  BinaryVector gamma(4);
  gamma.set(2, true);
  NnVector<double> p = net.forward(gamma);
  CHECK(p.size() == 2);
  for (Eigen::Index i = 0; i < 2; ++i) {
    CHECK(p(i) > 0.0);
    CHECK(p(i) < 1.0);
  }
}

TEST_CASE("initialization is deterministic") {
  MndNet<double> a = MndNet<double>::initialize(tiny_config(), 0x2);
  MndNet<double> b = MndNet<double>::initialize(tiny_config(), 0x2);
  CHECK(a.net.w[0] == b.net.w[0]);
  CHECK(a.net.w[1] == b.net.w[1]);
}

TEST_CASE("config validation") {
  MndConfig cfg = tiny_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.n_gamma = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = tiny_config();
  cfg.n_sector = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = tiny_config();
  cfg.hidden = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("training learns a syndrome-determined target") {
  // beta copies the first two syndrome bits: fully learnable marginals.
  MndConfig cfg = tiny_config();
  cfg.train_steps = 600;
  cfg.batch_size = 32;
  cfg.learning_rate = 1e-2;
  cfg.log_every = 100;
  std::uint64_t counter = 0;
  SampleStream stream = [&counter] {
    CounterRng rng(123, counter++);
    BinaryVector gamma(4), beta(2);
    for (std::size_t i = 0; i < 4; ++i) gamma.set(i, rng.next_double() < 0.5);
    beta.set(0, gamma.get(0));
    beta.set(1, gamma.get(1));
    return LabeledSample{std::nullopt, beta, gamma};
  };
  std::size_t hook_calls = 0;
  TrainedMnd<double> out = train_mnd<double>(
      cfg, 0x3, stream, [&hook_calls](const TrainLogEntry&) { ++hook_calls; });
  REQUIRE(!out.curve.empty());
  CHECK(hook_calls == out.curve.size());
  CHECK(out.curve.back().loss < 0.1);
  CHECK(out.curve.back().loss < out.curve.front().loss);

  BinaryVector gamma(4);
  gamma.set(0, true);
  NnVector<double> p = out.net.forward(gamma);
  CHECK(p(0) > 0.9);
  CHECK(p(1) < 0.1);
}

TEST_CASE("training is deterministic when the stream is") {
  MndConfig cfg = tiny_config();
  cfg.train_steps = 50;
  cfg.batch_size = 8;
  auto make_stream = [] {
    auto counter = std::make_shared<std::uint64_t>(0);
    return SampleStream([counter] {
      CounterRng rng(9, (*counter)++);
      BinaryVector gamma(4), beta(2);
      for (std::size_t i = 0; i < 4; ++i)
        gamma.set(i, rng.next_double() < 0.3);
      beta.set(0, gamma.get(3));
      return LabeledSample{std::nullopt, beta, gamma};
    });
  };
  TrainedMnd<double> a = train_mnd<double>(cfg, 0x4, make_stream());
  TrainedMnd<double> b = train_mnd<double>(cfg, 0x4, make_stream());
  CHECK(a.net.net.w[0] == b.net.net.w[0]);
  CHECK(a.curve.back().loss == b.curve.back().loss);
}

TEST_CASE("marginal model cannot represent correlated bits") {
  // Target: beta is (0,0) or (1,1) with equal probability, independent of
  // the syndrome. The best marginal answer is p = 1/2 per bit; per-bit BCE
  // bottoms out at 2 ln 2 while an autoregressive model could reach ln 2.
  MndConfig cfg = tiny_config();
  cfg.train_steps = 800;
  cfg.batch_size = 64;
  cfg.learning_rate = 1e-2;
  std::uint64_t counter = 0;
  SampleStream stream = [&counter] {
    CounterRng rng(55, counter++);
    BinaryVector gamma(4), beta(2);
    const bool pair = rng.next_double() < 0.5;
    beta.set(0, pair);
    beta.set(1, pair);
    return LabeledSample{std::nullopt, beta, gamma};
  };
  TrainedMnd<double> out = train_mnd<double>(cfg, 0x5, stream);
  const double two_ln2 = 2 * std::log(2.0);
  CHECK(out.curve.back().loss == doctest::Approx(two_ln2).epsilon(0.05));
  NnVector<double> p = out.net.forward(BinaryVector(4));
  CHECK(p(0) == doctest::Approx(0.5).epsilon(0.1));
  CHECK(p(1) == doctest::Approx(0.5).epsilon(0.1));
}
