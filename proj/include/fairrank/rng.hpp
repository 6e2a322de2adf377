#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fairrank {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

/// Deterministic random source. The draw sequence depends only on the seed
/// (mt19937_64 is fully specified by the standard and doubles are built from
/// the top 53 bits), so results are identical across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform();
  // Uniform on (0, 1].
  double uniform_open_closed();
  bool bernoulli(double p);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Seed for one simulation cell:
///   splitmix64(master ^ splitmix64(fnv1a64(experiment) ^ splitmix64((f_index << 32) | trial)))
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::string_view experiment,
                                std::uint64_t f_index, std::uint64_t trial);

}  // namespace fairrank
