#include "blocktrain/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blocktrain {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& w : state_) w = splitmix64(sm);
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t sm = seed;
  const std::uint64_t a = splitmix64(sm);
  sm = stream ^ 0xa0761d6478bd642fULL;
  const std::uint64_t b = splitmix64(sm);
  return Rng(a ^ rotl(b, 17));
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_double_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

std::int64_t Rng::index(std::int64_t bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::index bound must be positive");
  // Rejection sampling for an unbiased draw.
  const std::uint64_t ub = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % ub;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::int64_t>(x % ub);
}

template <class S>
Tensor<S> Rng::normal(Shape shape, S mean, S stddev) {
  if (!(static_cast<double>(stddev) >= 0.0)) {
    throw std::invalid_argument("normal: stddev must be >= 0");
  }
  Tensor<S> t(std::move(shape));
  for (S& v : t.data()) {
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    v = static_cast<S>(static_cast<double>(mean) + static_cast<double>(stddev) * z);
  }
  return t;
}

template <class S>
Tensor<S> Rng::uniform(Shape shape, S lo, S hi) {
  if (!(lo <= hi)) throw std::invalid_argument("uniform: lo must be <= hi");
  Tensor<S> t(std::move(shape));
  for (S& v : t.data()) {
    v = static_cast<S>(static_cast<double>(lo) +
                       (static_cast<double>(hi) - static_cast<double>(lo)) * next_double());
  }
  return t;
}

template Tensor<float> Rng::normal<float>(Shape, float, float);
template Tensor<double> Rng::normal<double>(Shape, double, double);
template Tensor<float> Rng::uniform<float>(Shape, float, float);
template Tensor<double> Rng::uniform<double>(Shape, double, double);

}  // namespace blocktrain
