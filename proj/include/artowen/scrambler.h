// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#pragma once

#include <artowen/grammar.h>
#include <artowen/rng.h>
#include <artowen/sobol.h>

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace artowen
{

/// Per-symbol scrambling vectors for one dimension.
///
/// Vectors are 32-bit words, MSB-aligned: bit j (counting from the MSB)
/// flips the node j levels below the node carrying the symbol, so bit 0
/// swaps that node's own children. Bits at and beyond `depth` are zero.
class ScrambleData
{
  public:
	/// Throws std::invalid_argument when depth > 32 or a vector has bits set
	/// beyond depth.
	ScrambleData(std::vector<std::uint32_t> vectors, int depth);

	static ScrambleData zero(std::size_t n_symbols, int depth);
	static ScrambleData random(std::size_t n_symbols, int depth, Rng& rng);

	std::size_t size() const { return vectors_.size(); }
	int depth() const { return depth_; }
	std::span<const std::uint32_t> vectors() const { return vectors_; }
	std::uint32_t operator[](Symbol s) const { return vectors_[s]; }

	/// Replaces one vector; the new value is masked to the table depth.
	void set(Symbol s, std::uint32_t vector) { vectors_[s] = vector & mask(); }

	std::uint32_t mask() const { return depth_ == 0 ? 0u : ~0u << (32 - depth_); }

	bool operator==(const ScrambleData&) const = default;

  private:
	std::vector<std::uint32_t> vectors_;
	int depth_;
};

/// Text format: `N depth`, then N hexadecimal MSB-aligned words.
void write_scramble_data(std::ostream& out, const ScrambleData& data);
ScrambleData read_scramble_data(std::istream& in);

/// Grammar-driven Owen scrambler. The grammar is shared by every dimension;
/// each dimension has its own data table.
class ArtOwenScrambler
{
  public:
	/// Throws std::invalid_argument when depth > bits, a table's size differs
	/// from the alphabet, a table is shallower than depth or the alphabet
	/// has 2^27 symbols or more. Lookup tables take 144 bytes per symbol and
	/// dimension.
	ArtOwenScrambler(Grammar grammar, std::vector<ScrambleData> data, int depth,
	                 int bits = kMaxBits);

	/// Fresh random tables, table d seeded by derive_seed(seed, d).
	static ArtOwenScrambler random(Grammar grammar, std::size_t dimensions, int depth,
	                               std::uint64_t seed, int bits = kMaxBits);

	const Grammar& grammar() const { return grammar_; }
	const std::vector<ScrambleData>& data() const { return data_; }
	std::size_t dimensions() const { return data_.size(); }
	int depth() const { return depth_; }
	int bits() const { return bits_; }

	/// Inputs are m-bit integers (m = bits()); bits below depth pass through.
	/// Walks the tree four levels per table lookup.
	std::uint32_t scramble(std::uint32_t x, std::size_t dim) const
	{
		const std::uint32_t aligned = x << (32 - bits_);
		const std::uint64_t* chunks = chunks_[dim].data();
		std::uint32_t flips = 0;
		std::uint32_t index = grammar_.start() << kChunkBits;
		int level = 0;
		for(; level + kChunkBits <= depth_; level += kChunkBits)
		{
			const std::uint64_t e = chunks[index | ((aligned >> (32 - kChunkBits - level)) & kChunkMask)];
			flips ^= static_cast<std::uint32_t>(e >> 32) >> level;
			index = static_cast<std::uint32_t>(e);
		}
		const std::uint32_t* vectors = data_[dim].vectors().data();
		for(Symbol symbol = index >> kChunkBits; level < depth_; ++level)
		{
			flips ^= vectors[symbol] >> level;
			symbol = table_[2 * symbol + ((aligned >> (31 - level)) & 1u)];
		}
		return (aligned ^ (flips & depth_mask_)) >> (32 - bits_);
	}

	std::uint32_t unscramble(std::uint32_t y, std::size_t dim) const
	{
		const std::uint32_t aligned = y << (32 - bits_);
		const std::uint64_t* chunks = chunks_[dim].data();
		const std::uint8_t* inverse = inverse_[dim].data();
		std::uint32_t flips = 0;
		std::uint32_t index = grammar_.start() << kChunkBits;
		int level = 0;
		for(; level + kChunkBits <= depth_; level += kChunkBits)
		{
			// Ancestors above the chunk are settled; undo them, then the chunk's own flips.
			const std::uint32_t seen = ((aligned ^ flips) >> (32 - kChunkBits - level)) & kChunkMask;
			const std::uint64_t e = chunks[index | inverse[index | seen]];
			flips ^= static_cast<std::uint32_t>(e >> 32) >> level;
			index = static_cast<std::uint32_t>(e);
		}
		const std::uint32_t* vectors = data_[dim].vectors().data();
		for(Symbol symbol = index >> kChunkBits; level < depth_; ++level)
		{
			// Later levels only touch lower bits, so flip `level` is final here.
			flips ^= vectors[symbol] >> level;
			symbol = table_[2 * symbol + (((aligned ^ flips) >> (31 - level)) & 1u)];
		}
		return (aligned ^ (flips & depth_mask_)) >> (32 - bits_);
	}

	/// One level per step, straight from the accumulator definition. Kept as
	/// the reference for the table-driven walk above.
	std::uint32_t scramble_levelwise(std::uint32_t x, std::size_t dim) const
	{
		const std::uint32_t aligned = x << (32 - bits_);
		const std::uint32_t* vectors = data_[dim].vectors().data();
		// Flip bit l is the MSB of the accumulator after l shifts, which is
		// bit (31 - l) of XOR over ancestors j <= l of vectors[s_j] >> j.
		std::uint32_t flips = 0;
		Symbol symbol = grammar_.start();
		for(int level = 0; level < depth_; ++level)
		{
			flips ^= vectors[symbol] >> level;
			symbol = table_[2 * symbol + ((aligned >> (31 - level)) & 1u)];
		}
		return (aligned ^ (flips & depth_mask_)) >> (32 - bits_);
	}

	std::uint32_t unscramble_levelwise(std::uint32_t y, std::size_t dim) const
	{
		const std::uint32_t aligned = y << (32 - bits_);
		const std::uint32_t* vectors = data_[dim].vectors().data();
		std::uint32_t flips = 0;
		Symbol symbol = grammar_.start();
		for(int level = 0; level < depth_; ++level)
		{
			flips ^= vectors[symbol] >> level;
			symbol = table_[2 * symbol + (((aligned ^ flips) >> (31 - level)) & 1u)];
		}
		return (aligned ^ (flips & depth_mask_)) >> (32 - bits_);
	}

  private:
	Grammar grammar_;
	std::vector<Symbol> table_;
	std::vector<ScrambleData> data_;
	// Per dimension, entry (symbol << 4 | chunk) packs the combined flip word
	// of four levels (high half) and the next symbol << 4 (low half).
	std::vector<std::vector<std::uint64_t>> chunks_;
	// Per dimension, maps (symbol << 4 | scrambled chunk) back to the chunk.
	std::vector<std::vector<std::uint8_t>> inverse_;
	int depth_;
	int bits_;
	std::uint32_t depth_mask_;

	static constexpr int kChunkBits = 4;
	static constexpr std::uint32_t kChunkMask = (1u << kChunkBits) - 1;
};

inline std::uint32_t art_scramble(std::uint32_t x, std::size_t dim, const ArtOwenScrambler& s)
{
	return s.scramble(x, dim);
}

inline std::uint32_t art_unscramble(std::uint32_t y, std::size_t dim, const ArtOwenScrambler& s)
{
	return s.unscramble(y, dim);
}

/// Applies art_scramble to each coordinate; p may not have more dimensions
/// than the scrambler.
SamplePoint scramble_point(const SamplePoint& p, const ArtOwenScrambler& s);

/// Fully materialised Owen scrambling tree: level l holds 2^l flip bits
/// indexed by the original (unscrambled) l-bit prefix.
class ExplicitTree
{
  public:
	explicit ExplicitTree(std::vector<std::vector<std::uint8_t>> levels);

	static ExplicitTree zero(int depth);
	static ExplicitTree random(int depth, Rng& rng);

	/// Parses the comma-separated level notation, e.g. "1,01,1101,10010010".
	static ExplicitTree parse(const std::string& text);
	std::string to_string() const;

	int depth() const { return static_cast<int>(levels_.size()); }
	const std::vector<std::vector<std::uint8_t>>& levels() const { return levels_; }
	std::uint8_t flip(int level, std::uint32_t prefix) const { return levels_[level][prefix]; }

	bool operator==(const ExplicitTree&) const = default;

  private:
	std::vector<std::vector<std::uint8_t>> levels_;
};

/// Materialises dimension dim of s down to `depth` levels, straight from the
/// grammar walk. Throws std::invalid_argument when depth > s.depth() or
/// depth > 24.
ExplicitTree expand_to_tree(const ArtOwenScrambler& s, std::size_t dim, int depth);

/// Scrambles a depth-bit integer (MSB = level 0) with an explicit tree.
std::uint32_t tree_scramble(std::uint32_t x, const ExplicitTree& tree);

inline std::uint32_t xor_scramble(std::uint32_t x, std::uint32_t code)
{
	return x ^ code;
}

/// Bit-wise prefix XOR of an MSB-first word: output bit l = XOR of bits 0..l.
std::uint32_t prefix_xor(std::uint32_t v);

/// Inverse of prefix_xor.
std::uint32_t prefix_xor_inverse(std::uint32_t v);

std::uint32_t reverse_bits(std::uint32_t v);

/// Hash-based nested uniform scramble: bit reversal, Laine-Karras style
/// hash, bit reversal. A comparator only.
std::uint32_t burley_hash_scramble(std::uint32_t x, std::uint32_t seed, int bits = kMaxBits);

/// Global-sampler inversion: indices i < count whose scrambled 2D point
/// (dimensions 0 and 1) lies in pixel (px, py) of the 2^k x 2^k grid, in
/// increasing order. Throws std::invalid_argument when the pixel or count is
/// out of range, and std::runtime_error when the leading k rows of the two
/// generator matrices are not jointly of full rank.
std::vector<std::uint64_t> enumerate_pixel_samples(const ArtOwenScrambler& s,
                                                   std::span<const GeneratorMatrix> matrices,
                                                   std::uint32_t px, std::uint32_t py,
                                                   int grid_log2, std::uint64_t count);

} // namespace artowen
