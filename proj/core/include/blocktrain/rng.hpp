#pragma once

#include <array>
#include <cstdint>

#include "blocktrain/tensor.hpp"

namespace blocktrain {

/// xoshiro256++ with splitmix64 seed expansion. The stream depends only on the
/// seed, never on the platform or standard library, so identical seeds give
/// bitwise-identical tensors across runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Deterministic sub-stream for (seed, purpose) pairs, e.g. per-epoch shuffles.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_double();       // [0, 1), 53-bit resolution
  double next_double_open();  // (0, 1], safe as a log() argument

  // Box-Muller; samples are drawn in double then cast, so float and double
  // fills of the same shape consume the same underlying stream.
  template <class S>
  Tensor<S> normal(Shape shape, S mean, S stddev);

  template <class S>
  Tensor<S> uniform(Shape shape, S lo, S hi);

  std::int64_t index(std::int64_t bound);  // uniform in [0, bound)

 private:
  std::array<std::uint64_t, 4> state_;
};

std::uint64_t splitmix64(std::uint64_t& x);

extern template Tensor<float> Rng::normal<float>(Shape, float, float);
extern template Tensor<double> Rng::normal<double>(Shape, double, double);
extern template Tensor<float> Rng::uniform<float>(Shape, float, float);
extern template Tensor<double> Rng::uniform<double>(Shape, double, double);

}  // namespace blocktrain
