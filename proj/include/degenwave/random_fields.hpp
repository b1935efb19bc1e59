#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "degenwave/basis.hpp"
#include "degenwave/evolution.hpp"

namespace degenwave {

/// Random initial datum with both coefficient sets drawn as N(0,1)/lambda_b;
/// the 1/lambda decay keeps E(0) balanced across family members.
InitialData random_superposition(std::mt19937_64& rng, const SpectralBasis& basis);

/// Deterministic observation family: the eig_count lowest eigenmodes (as
/// position data, sorted by lambda) followed by random_count seeded
/// superpositions.
std::vector<InitialData> observation_family(const SpectralBasis& basis, int eig_count,
                                            int random_count, std::uint64_t seed);

/// Random smooth field supported away from r = 1 (a sum of radial bumps with
/// random centers, widths and amplitudes times random angular harmonics up to
/// max_mode); vanishes identically in the last radial cell, as the Hardy
/// trace condition requires.
GridField random_bump_field(std::mt19937_64& rng, int angular_samples, const RadialGrid& grid,
                            int max_mode);

}  // namespace degenwave
