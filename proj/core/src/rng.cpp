#include "gnd/rng.hpp"

namespace gnd {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// 64-bit finalizer with full avalanche (the splitmix64 output mix).
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGolden) ^ mix64(stream * kGolden + 1))) {}

std::uint64_t CounterRng::next_u64() {
  return mix64(key_ + kGolden * ++counter_);
}

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace gnd
