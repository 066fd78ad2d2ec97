#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gnd/nn.hpp"

using namespace gnd;

namespace {

using Net = DenseNet<double>;
using Mat = NnMatrix<double>;

Mat random_batch(std::size_t rows, std::size_t cols, CounterRng& rng,
                 bool binary) {
  Mat m(rows, cols);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      m(r, c) = binary ? double(rng.next_double() < 0.5) : rng.next_double();
  return m;
}

Net small_net(CounterRng& rng) {
  Net net;
  net.init({4, 6, 3}, rng);
  return net;
}

}  // namespace

TEST_CASE("zero weights produce one half everywhere") {
  Net net;
  CounterRng rng(1, 0);
  net.init({5, 8, 2}, rng);
  for (auto& wl : net.w) wl.setZero();
  Mat x = random_batch(5, 7, rng, false);
  Mat p = net.forward(x);
  CHECK(p.rows() == 2);
  CHECK(p.cols() == 7);
  for (Eigen::Index c = 0; c < p.cols(); ++c)
    for (Eigen::Index r = 0; r < p.rows(); ++r)
      CHECK(p(r, c) == 0.5);
}

TEST_CASE("initialization is deterministic and bounded") {
  CounterRng a(5, 1), b(5, 1), c(6, 1);
  Net na, nb, nc;
  na.init({4, 9, 2}, a);
  nb.init({4, 9, 2}, b);
  nc.init({4, 9, 2}, c);
  CHECK(na.w[0] == nb.w[0]);
  CHECK(na.w[1] == nb.w[1]);
  CHECK(na.w[0] != nc.w[0]);
  for (Eigen::Index r = 0; r < na.w[0].rows(); ++r)
    for (Eigen::Index col = 0; col < na.w[0].cols(); ++col)
      CHECK(std::abs(na.w[0](r, col)) <= 1.0 / std::sqrt(4.0));
  CHECK(na.b[0].isZero());
  CHECK(na.parameter_count(true) == 4 * 9 + 9 + 9 * 2 + 2);
}

TEST_CASE("bce loss oracle on a tiny example") {
  Mat p(2, 2), t(2, 2);
  p << 0.8, 0.3, 0.6, 0.9;
  t << 1, 0, 0, 1;
  const double expect = (-(std::log(0.8) + std::log(1 - 0.6)) -
                         (std::log(1 - 0.3) + std::log(0.9))) /
                        2.0;
  CHECK(bce_loss(p, t) == doctest::Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(bce_loss(p, Mat(2, 3)), std::invalid_argument);
}

TEST_CASE("analytic gradients match finite differences") {
  CounterRng rng(11, 0);
  Net net = small_net(rng);
  Mat x = random_batch(4, 5, rng, true);
  Mat t = random_batch(3, 5, rng, true);

  Net::Trace trace;
  net.forward_trace(x, trace);
  Gradients<double> g(net);
  backward(net, trace, t, g);

  const double eps = 1e-6;
  auto loss_at = [&]() { return bce_loss(net.forward(x), t); };
  double max_rel = 0.0;
  for (std::size_t l = 0; l < net.layers(); ++l) {
    for (Eigen::Index r = 0; r < net.w[l].rows(); ++r)
      for (Eigen::Index c = 0; c < net.w[l].cols(); ++c) {
        const double save = net.w[l](r, c);
        net.w[l](r, c) = save + eps;
        const double up = loss_at();
        net.w[l](r, c) = save - eps;
        const double down = loss_at();
        net.w[l](r, c) = save;
        const double fd = (up - down) / (2 * eps);
        const double rel = std::abs(fd - g.w[l](r, c)) /
                           std::max(1e-8, std::abs(fd) + std::abs(g.w[l](r, c)));
        max_rel = std::max(max_rel, rel);
      }
    for (Eigen::Index r = 0; r < net.b[l].size(); ++r) {
      const double save = net.b[l](r);
      net.b[l](r) = save + eps;
      const double up = loss_at();
      net.b[l](r) = save - eps;
      const double down = loss_at();
      net.b[l](r) = save;
      const double fd = (up - down) / (2 * eps);
      const double rel = std::abs(fd - g.b[l](r)) /
                         std::max(1e-8, std::abs(fd) + std::abs(g.b[l](r)));
      max_rel = std::max(max_rel, rel);
    }
  }
  CHECK(max_rel < 1e-5);
}

TEST_CASE("masked entries stay exactly zero through training") {
  CounterRng rng(13, 0);
  Net net;
  net.mask.resize(2);
  net.mask[0] = Mat::Ones(6, 4);
  net.mask[1] = Mat::Ones(3, 6);
  net.mask[0](2, 1) = 0;
  net.mask[0](5, 3) = 0;
  net.mask[1](0, 0) = 0;
  net.init({4, 6, 3}, rng);
  CHECK(net.w[0](2, 1) == 0.0);
  CHECK(net.parameter_count(false) == net.parameter_count(true) - 3);

  AdamState<double> adam(net);
  for (int step = 0; step < 25; ++step) {
    Mat x = random_batch(4, 8, rng, true);
    Mat t = random_batch(3, 8, rng, true);
    Net::Trace trace;
    net.forward_trace(x, trace);
    Gradients<double> g(net);
    backward(net, trace, t, g);
    CHECK(g.w[0](2, 1) == 0.0);
    adam.step(net, g, 1e-2);
    CHECK(net.w[0](2, 1) == 0.0);
    CHECK(net.w[0](5, 3) == 0.0);
    CHECK(net.w[1](0, 0) == 0.0);
  }
}

TEST_CASE("first adam step moves by nearly the learning rate") {
  // With zero moments, the bias-corrected first step is
  // lr * g / (|g| + eps'): essentially lr * sign(g).
  CounterRng rng(17, 0);
  Net net = small_net(rng);
  Net before = net;
  Mat x = random_batch(4, 6, rng, true);
  Mat t = random_batch(3, 6, rng, true);
  Net::Trace trace;
  net.forward_trace(x, trace);
  Gradients<double> g(net);
  backward(net, trace, t, g);
  AdamState<double> adam(net);
  const double lr = 1e-3;
  adam.step(net, g, lr);
  for (std::size_t l = 0; l < net.layers(); ++l)
    for (Eigen::Index r = 0; r < net.w[l].rows(); ++r)
      for (Eigen::Index c = 0; c < net.w[l].cols(); ++c) {
        const double moved = net.w[l](r, c) - before.w[l](r, c);
        const double grad = g.w[l](r, c);
        if (std::abs(grad) > 1e-4)
          CHECK(moved ==
                doctest::Approx(-lr * (grad > 0 ? 1.0 : -1.0)).epsilon(1e-3));
      }
}

TEST_CASE("training the same data twice gives identical nets") {
  auto run = [] {
    CounterRng rng(23, 0);
    Net net;
    net.init({4, 5, 2}, rng);
    AdamState<double> adam(net);
    for (int step = 0; step < 10; ++step) {
      Mat x = random_batch(4, 4, rng, true);
      Mat t = random_batch(2, 4, rng, true);
      Net::Trace trace;
      net.forward_trace(x, trace);
      Gradients<double> g(net);
      backward(net, trace, t, g);
      adam.step(net, g, 1e-2);
    }
    return net;
  };
  Net a = run(), b = run();
  for (std::size_t l = 0; l < a.layers(); ++l) {
    CHECK(a.w[l] == b.w[l]);
    CHECK(a.b[l] == b.b[l]);
  }
}

TEST_CASE("loss decreases on a learnable constant target") {
  CounterRng rng(29, 0);
  Net net;
  net.init({3, 8, 2}, rng);
  AdamState<double> adam(net);
  Mat x = random_batch(3, 16, rng, true);
  Mat t = Mat::Zero(2, 16);
  t.row(0).setOnes();  // first output always 1, second always 0
  const double initial = bce_loss(net.forward(x), t);
  for (int step = 0; step < 300; ++step) {
    Net::Trace trace;
    net.forward_trace(x, trace);
    Gradients<double> g(net);
    backward(net, trace, t, g);
    adam.step(net, g, 1e-2);
  }
  const double final_loss = bce_loss(net.forward(x), t);
  CHECK(final_loss < initial * 0.1);
  CHECK(final_loss < 0.05);
}
