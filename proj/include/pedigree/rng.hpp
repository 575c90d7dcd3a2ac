#pragma once

#include <cstdint>
#include <random>

namespace pedigree {

using Rng = std::mt19937_64;

/// Stream roles so that Alice, Bob and samplers never share a sequence.
enum class RngRole : std::uint32_t { kBob = 1, kAlice = 2, kSampler = 3, kChecks = 4 };

/// Engine seeded from (seed, role) through std::seed_seq. The derivation is
/// fixed: seed_seq{seed_lo, seed_hi, role}.
Rng make_rng(std::uint64_t seed, RngRole role);

/// Seed of game `index` in a campaign: the first two 32-bit words produced by
/// seed_seq{master_lo, master_hi, stream, index_lo, index_hi}. Independent of
/// which worker plays the game.
std::uint64_t derive_game_seed(std::uint64_t master, std::uint64_t stream,
                               std::uint64_t index);

/// Uniform integer in [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Deterministic per-(seed, round) Bernoulli draw used to sample rounds for
/// expensive checks without consuming game randomness.
bool sampled(std::uint64_t seed, std::uint64_t round, double rate);

}  // namespace pedigree
