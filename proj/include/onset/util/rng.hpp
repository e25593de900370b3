#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace onset {

using Rng = std::mt19937_64;

/// Expands a master seed into an independent, stably-labelled stream seed.
/// The same (master, label) pair always yields the same value.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);

/// Indexed variant, used for per-tree and per-sample streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

Rng make_rng(std::uint64_t seed);

}  // namespace onset
