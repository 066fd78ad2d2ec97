// Microbenchmarks for the hot paths: frame coordinate maps, decoders, the
// autoregressive forward pass, and the GF(2) kernels they sit on. Run the
// binary directly; it is not part of ctest.

#include <benchmark/benchmark.h>

#include <vector>

#include "gnd/codes.hpp"
#include "gnd/decoder_bposd.hpp"
#include "gnd/decoder_gnd.hpp"
#include "gnd/decoder_mld.hpp"
#include "gnd/decoder_mnd.hpp"
#include "gnd/made.hpp"
#include "gnd/mnd.hpp"
#include "gnd/noise.hpp"
#include "gnd/osd.hpp"
#include "gnd/rng.hpp"

namespace {

using namespace gnd;

PauliOperator random_pauli(std::size_t n, CounterRng& rng) {
  BinaryVector x(n), z(n);
  for (std::size_t i = 0; i < n; ++i) {
    x.set(i, rng.bernoulli(0.5));
    z.set(i, rng.bernoulli(0.5));
  }
  return PauliOperator(std::move(x), std::move(z));
}

BinaryVector random_bits(std::size_t n, CounterRng& rng) {
  BinaryVector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng.bernoulli(0.5));
  return v;
}

std::vector<BinaryVector> sampled_syndromes(const ElsFrame& frame, double p,
                                            std::size_t count) {
  const NoiseModel model{DepolarizingModel{p}};
  std::vector<BinaryVector> out;
  out.reserve(count);
  for (std::size_t shot = 0; shot < count; ++shot) {
    CounterRng rng(17, shot);
    out.push_back(sample_code_capacity(frame, model, rng).gamma);
  }
  return out;
}

const ElsFrame& rsc3_frame() {
  static const ElsFrame frame = build_els_frame(rotated_surface_code(3));
  return frame;
}

const ElsFrame& bb72_frame() {
  static const ElsFrame frame =
      build_els_frame(load_code_file(GND_DATA_DIR "/codes/bb72_12_6.qcode"));
  return frame;
}

const ElsFrame& gb30_frame() {
  static const ElsFrame frame =
      build_els_frame(load_code_file(GND_DATA_DIR "/codes/gb30_6_4.qcode"));
  return frame;
}

void BM_DecomposeRsc3(benchmark::State& state) {
  const ElsFrame& frame = rsc3_frame();
  CounterRng rng(1, 0);
  const PauliOperator e = random_pauli(frame.n(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_error(frame, e));
}

void BM_DecomposeBb72(benchmark::State& state) {
  const ElsFrame& frame = bb72_frame();
  CounterRng rng(1, 0);
  const PauliOperator e = random_pauli(frame.n(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_error(frame, e));
}

void BM_ComposeBb72(benchmark::State& state) {
  const ElsFrame& frame = bb72_frame();
  CounterRng rng(2, 0);
  ElsConfig cfg;
  cfg.alpha = random_bits(frame.m(), rng);
  cfg.beta = random_bits(2 * frame.k(), rng);
  cfg.gamma = random_bits(frame.m(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(compose_error(frame, cfg));
}

void BM_SampleCodeCapacityBb72(benchmark::State& state) {
  const ElsFrame& frame = bb72_frame();
  const NoiseModel model{DepolarizingModel{0.05}};
  std::uint64_t shot = 0;
  for (auto _ : state) {
    CounterRng rng(3, shot++);
    benchmark::DoNotOptimize(sample_code_capacity(frame, model, rng));
  }
}

void BM_MldDecodeRsc3(benchmark::State& state) {
  const ExactMldDecoder mld(rsc3_frame(), NoiseModel{DepolarizingModel{0.05}});
  const auto syndromes = sampled_syndromes(rsc3_frame(), 0.05, 64);
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(mld.decode(syndromes[i++ % syndromes.size()]));
}

void BM_MldDecodeBb18(benchmark::State& state) {
  const ElsFrame frame =
      build_els_frame(load_code_file(GND_DATA_DIR "/codes/bb18_4_4.qcode"));
  const ExactMldDecoder mld(frame, NoiseModel{DepolarizingModel{0.05}});
  const auto syndromes = sampled_syndromes(frame, 0.05, 8);
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(mld.decode(syndromes[i++ % syndromes.size()]));
}

template <std::size_t Width>
MadeNet<double> made_for(const ElsFrame& frame) {
  MadeConfig cfg;
  cfg.n_gamma = frame.m();
  cfg.n_sector = 2 * frame.k();
  cfg.width = Width;
  cfg.seed = 5;
  return MadeNet<double>::initialize(cfg, 0);
}

void BM_GndDecodeRsc3(benchmark::State& state) {
  const GndDecoder<double> gnd(made_for<16>(rsc3_frame()), 0);
  const auto syndromes = sampled_syndromes(rsc3_frame(), 0.1, 64);
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(gnd.decode(syndromes[i++ % syndromes.size()]));
}

void BM_GndDecodeGb30(benchmark::State& state) {
  const GndDecoder<double> gnd(made_for<4>(gb30_frame()), 0);
  const auto syndromes = sampled_syndromes(gb30_frame(), 0.1, 64);
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(gnd.decode(syndromes[i++ % syndromes.size()]));
}

void BM_MndDecodeGb30(benchmark::State& state) {
  MndConfig cfg;
  cfg.n_gamma = gb30_frame().m();
  cfg.n_sector = 2 * gb30_frame().k();
  cfg.hidden = 108;
  cfg.seed = 5;
  const MndDecoder<double> mnd(MndNet<double>::initialize(cfg, 0), 0);
  const auto syndromes = sampled_syndromes(gb30_frame(), 0.1, 64);
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(mnd.decode(syndromes[i++ % syndromes.size()]));
}

void BM_MadeForwardBatch512(benchmark::State& state) {
  const MadeNet<double> net = made_for<4>(gb30_frame());
  const std::size_t n_in = net.config.n_in();
  NnMatrix<double> x(n_in, 512);
  CounterRng rng(6, 0);
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      x(r, c) = rng.bernoulli(0.5) ? 1.0 : 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(net.net.forward(x));
}

void BM_BposdDecodeGb30(benchmark::State& state) {
  const BposdDecoder bposd(gb30_frame(), NoiseModel{DepolarizingModel{0.05}});
  const auto syndromes = sampled_syndromes(gb30_frame(), 0.05, 64);
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(bposd.decode(syndromes[i++ % syndromes.size()]));
}

void BM_OsdSweepBb72(benchmark::State& state) {
  const BinaryMatrix h = check_matrix(bb72_frame().code);
  CounterRng rng(7, 0);
  const BinaryVector syndrome = random_bits(h.rows(), rng);
  std::vector<double> llr(h.cols());
  for (double& v : llr) v = -3.0 + 8.0 * rng.next_double();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        osd_postprocess(h, syndrome, llr, OsdMode::CombinationSweep, 10));
}

void BM_RowReduce60x144(benchmark::State& state) {
  CounterRng rng(8, 0);
  BinaryMatrix m(60, 144);
  for (std::size_t r = 0; r < 60; ++r) m.set_row(r, random_bits(144, rng));
  for (auto _ : state) benchmark::DoNotOptimize(gf2_row_reduce(m));
}

BENCHMARK(BM_DecomposeRsc3);
BENCHMARK(BM_DecomposeBb72);
BENCHMARK(BM_ComposeBb72);
BENCHMARK(BM_SampleCodeCapacityBb72);
BENCHMARK(BM_MldDecodeRsc3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MldDecodeBb18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GndDecodeRsc3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GndDecodeGb30)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MndDecodeGb30)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MadeForwardBatch512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BposdDecodeGb30)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OsdSweepBb72)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RowReduce60x144)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
