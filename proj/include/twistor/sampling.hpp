#pragma once

#include <cstdint>
#include <random>

#include "twistor/types.hpp"

namespace tw {

// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Mat3 random_unitary(std::mt19937_64& rng);
// Ginibre matrix redrawn until its condition number is below max_cond.
Mat3 random_invertible(std::mt19937_64& rng, double max_cond = 1e3);
// Uniform in the disk of radius r.
cplx random_cplx(std::mt19937_64& rng, double r = 1.0);

// Fixed splitting rule for per-check seeds.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

}  // namespace tw
