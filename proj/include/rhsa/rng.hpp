#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rhsa {

// Derives an independent seed for a named stage from the run's root seed,
// so each stage can be rerun on its own without perturbing the others.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream);

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t root, std::string_view stream)
      : engine_(derive_seed(root, stream)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t index(std::uint64_t n);
  // Uniform real in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

}  // namespace rhsa
