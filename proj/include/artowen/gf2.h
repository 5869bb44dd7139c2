// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace artowen
{

/// Dense bit matrix over GF(2), rows packed into 64-bit words.
class BitMatrix
{
  public:
	BitMatrix() = default;
	BitMatrix(std::size_t rows, std::size_t cols);

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }
	std::size_t words_per_row() const { return words_; }

	bool get(std::size_t r, std::size_t c) const
	{
		return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
	}
	void set(std::size_t r, std::size_t c, bool value = true)
	{
		auto& w = bits_[r * words_ + c / 64];
		const std::uint64_t bit = std::uint64_t{1} << (c % 64);
		w = value ? (w | bit) : (w & ~bit);
	}
	void flip(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

	std::span<std::uint64_t> row(std::size_t r) { return {bits_.data() + r * words_, words_}; }
	std::span<const std::uint64_t> row(std::size_t r) const { return {bits_.data() + r * words_, words_}; }

	std::size_t row_count(std::size_t r) const;
	std::size_t col_count(std::size_t c) const;

	bool operator==(const BitMatrix&) const = default;

  private:
	std::size_t rows_ = 0;
	std::size_t cols_ = 0;
	std::size_t words_ = 0;
	std::vector<std::uint64_t> bits_;
};

/// Outcome of solving A x = b over GF(2), rows taken in order.
struct Gf2Solution
{
	bool consistent = true;
	/// First row whose equation reduces to 0 = 1; valid when !consistent.
	std::size_t inconsistent_row = 0;
	/// One solution (free variables zero); valid when consistent.
	std::vector<std::uint8_t> x;
	std::size_t rank = 0;
};

/// Incremental Gaussian elimination. rhs holds one bit per row of a.
Gf2Solution solve_gf2(const BitMatrix& a, std::span<const std::uint8_t> rhs);

} // namespace artowen
