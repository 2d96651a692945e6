#pragma once

#include <cstdint>
#include <random>

#include "dilutron/linalg.hpp"

namespace dilutron {

using Rng = std::mt19937_64;

/// Independent stream for (seed, index); used so that parallel and serial
/// loops draw identical numbers per item.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
Rng make_rng(std::uint64_t seed, std::uint64_t index = 0);

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts N(0, 1/2)).
ComplexMatrix complex_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-random unitary via QR of a Gaussian draw with phase correction.
ComplexMatrix random_unitary(Rng& rng, Eigen::Index dim);

}  // namespace dilutron
