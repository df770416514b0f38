#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace hierpart {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent child seed for stream `stream` of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

// Fisher-Yates with plain modulo so the permutation does not depend on the
// standard library's distribution implementation.
template <typename T>
void shuffle_in_place(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(values[i - 1], values[j]);
  }
}

template <typename T>
std::vector<T> random_permutation(T n, Rng& rng) {
  std::vector<T> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), T{0});
  shuffle_in_place(std::span<T>(order), rng);
  return order;
}

}  // namespace hierpart
