#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace lapreg {

/// Derives a child seed from a parent seed and a path of 64-bit words.
/// Each word is folded in with the splitmix64 finalizer, so distinct
/// paths give decorrelated streams and regenerating one stream never
/// disturbs another. The path convention used across the library:
///   derive_seed(master, {block_tag})                  for model blocks
///   derive_seed(master, {purpose_tag, coords..., trial})  for harness cells
std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> path);

/// Reinterpret a double's bit pattern as a seed-path word.
std::uint64_t seed_word(double x);

/// Seeded random stream: mt19937_64 (19937-bit state) with uniforms on
/// [0,1) from the top 53 bits and Gaussians via the Box-Muller transform
/// (one cached spare per pair). Draw order is part of the reproducibility
/// contract; all matrix fills in this library are column-major.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0,1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();  // log(0) guard
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double gaussian(double stddev) { return stddev * gaussian(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lapreg
