#include "fairrank/rng.hpp"

namespace fairrank {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform_open_closed() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

bool SeededRng::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform() < p;
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::string_view experiment,
                                std::uint64_t f_index, std::uint64_t trial) {
  const std::uint64_t cell = splitmix64((f_index << 32) | (trial & 0xFFFFFFFFULL));
  return splitmix64(master_seed ^ splitmix64(fnv1a64(experiment) ^ cell));
}

}  // namespace fairrank
