// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#pragma once

#include <cstdint>
#include <random>

namespace artowen
{

/// SplitMix64 finaliser. Every derived seed in the library goes through this
/// function, so a (seed, stream, index) triple always names the same stream.
constexpr std::uint64_t mix64(std::uint64_t z)
{
	z += 0x9e3779b97f4a7c15ull;
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
	return z ^ (z >> 31);
}

/// Derive a child seed, e.g. derive_seed(master, dimension) or
/// derive_seed(master, realization, dimension).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                    std::uint64_t b = 0)
{
	return mix64(mix64(seed ^ mix64(a + 0x632be59bd9b4e019ull)) ^
	             mix64(b + 0x2545f4914f6cdd1dull));
}

/// Deterministic generator. Distributions are implemented here rather than
/// through <random> distributions, whose output is implementation defined.
class Rng
{
  public:
	explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

	std::uint64_t next_u64() { return engine_(); }
	std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_() >> 32); }

	/// Uniform integer in [0, bound); bound > 0.
	std::uint64_t below(std::uint64_t bound)
	{
		const std::uint64_t limit = -bound % bound;
		for(;;)
		{
			const std::uint64_t r = engine_();
			if(r >= limit)
			{
				return r % bound;
			}
		}
	}

	/// Uniform double in [0, 1) with 53 random bits.
	double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
	std::mt19937_64 engine_;
};

} // namespace artowen
