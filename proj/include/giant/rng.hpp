#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace giant {

using Rng = std::mt19937_64;

// Every random stream in the project is derived from one root seed through a
// (label, index) pair, so any sub-computation can be replayed in isolation.
std::uint64_t derive_seed(std::uint64_t root, std::string_view label, std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t root, std::string_view label, std::uint64_t index = 0) {
  return Rng(derive_seed(root, label, index));
}

}  // namespace giant
