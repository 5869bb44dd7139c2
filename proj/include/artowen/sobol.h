// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace artowen
{

constexpr int kMaxBits = 32;

/// Raised by the text-format readers; carries the 1-based line number.
class ParseError : public std::runtime_error
{
  public:
	ParseError(int line, const std::string& what)
	    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
	{
	}

	int line() const { return line_; }

  private:
	int line_;
};

/// Base-2 generator matrix of one Sobol dimension.
///
/// Column j is the direction number applied when bit j of the index is set.
/// Columns are m-bit words whose most significant bit (bit m-1) is the first
/// output digit, so the coordinate of index i is XOR of selected columns,
/// read as a fraction of 2^m.
class GeneratorMatrix
{
  public:
	/// Throws std::invalid_argument when a column is zero or too wide, or
	/// the column count differs from bits.
	GeneratorMatrix(std::vector<std::uint32_t> columns, int bits = kMaxBits);

	/// Dimension 0: bit reversal (van der Corput).
	static GeneratorMatrix identity(int bits = kMaxBits);

	/// Dimension 1: upper-triangular Pascal matrix mod 2.
	static GeneratorMatrix pascal(int bits = kMaxBits);

	/// From primitive-polynomial data (degree s, coefficients a, initial
	/// odd m_1..m_s) in the usual Joe-Kuo convention.
	static GeneratorMatrix from_direction_numbers(unsigned degree, std::uint32_t coefficients,
	                                              std::span<const std::uint32_t> initial,
	                                              int bits = kMaxBits);

	int bits() const { return bits_; }
	std::span<const std::uint32_t> columns() const { return columns_; }

	/// Bit (row, col) of the matrix; row 0 is the most significant output digit.
	bool entry(int row, int col) const
	{
		return (columns_[col] >> (bits_ - 1 - row)) & 1u;
	}

	bool invertible() const;

	/// Branch-free GF(2) matrix-vector product. index must be < 2^bits.
	std::uint32_t apply(std::uint64_t index) const
	{
		std::uint32_t result = 0;
		for(int j = 0; j < bits_; ++j)
		{
			result ^= columns_[j] & (0u - static_cast<std::uint32_t>((index >> j) & 1u));
		}
		return result;
	}

  private:
	std::vector<std::uint32_t> columns_;
	int bits_;
};

/// One sample: coordinate d is an m-bit integer, read as coords[d] / 2^m.
struct SamplePoint
{
	std::vector<std::uint32_t> coords;

	bool operator==(const SamplePoint&) const = default;
};

/// Bit reversal of index within an m-bit word. Throws std::out_of_range when
/// index >= 2^bits.
std::uint32_t van_der_corput(std::uint64_t index, int bits = kMaxBits);

/// Unscrambled Sobol point. Throws std::out_of_range when index >= 2^m and
/// std::invalid_argument when matrices is empty or mixes bit depths.
SamplePoint sobol_point(std::uint64_t index, std::span<const GeneratorMatrix> matrices);

/// Built-in dimensions 0 and 1.
std::vector<GeneratorMatrix> default_matrices(int bits = kMaxBits);

/// Reads Joe-Kuo direction numbers (`d s a m_1 .. m_s` per line, first line
/// is a header) and returns matrices for dimensions 0 .. dimensions-1, where
/// file record d describes dimension d-1. Dimensions 0 and 1 are built in.
/// Throws ParseError on malformed or missing records and on a singular matrix.
std::vector<GeneratorMatrix> load_direction_numbers(std::istream& in, std::size_t dimensions,
                                                    int bits = kMaxBits);

/// Fraction in [0, 1) of an m-bit coordinate.
inline double to_unit(std::uint32_t value, int bits = kMaxBits)
{
	return static_cast<double>(value) / static_cast<double>(std::uint64_t{1} << bits);
}

} // namespace artowen
