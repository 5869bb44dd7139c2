// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/gf2.h>

#include <bit>
#include <stdexcept>

namespace artowen
{

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0)
{
}

std::size_t BitMatrix::row_count(std::size_t r) const
{
	std::size_t n = 0;
	for(auto w : row(r))
	{
		n += static_cast<std::size_t>(std::popcount(w));
	}
	return n;
}

std::size_t BitMatrix::col_count(std::size_t c) const
{
	std::size_t n = 0;
	for(std::size_t r = 0; r < rows_; ++r)
	{
		n += get(r, c);
	}
	return n;
}

Gf2Solution solve_gf2(const BitMatrix& a, std::span<const std::uint8_t> rhs)
{
	if(rhs.size() != a.rows())
	{
		throw std::invalid_argument("solve_gf2: rhs size differs from row count");
	}
	const std::size_t words = a.words_per_row();
	const std::size_t cols = a.cols();

	// Basis rows in reduced form, each with one more word for the rhs bit.
	// basis_of[c] is the basis row pivoting on column c, or npos.
	constexpr std::size_t npos = static_cast<std::size_t>(-1);
	std::vector<std::vector<std::uint64_t>> basis;
	std::vector<std::size_t> pivot_col;
	std::vector<std::size_t> basis_of(cols, npos);

	Gf2Solution result;
	for(std::size_t r = 0; r < a.rows(); ++r)
	{
		std::vector<std::uint64_t> row(words + 1, 0);
		const auto src = a.row(r);
		std::copy(src.begin(), src.end(), row.begin());
		row[words] = rhs[r] & 1u;

		// Basis rows are fully reduced, so each one clears its own pivot column
		// and touches no other pivot column.
		for(std::size_t w = 0; w < words; ++w)
		{
			std::uint64_t pending = row[w];
			while(pending)
			{
				const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(pending));
				pending &= pending - 1;
				const std::size_t b = basis_of[c];
				if(b != npos)
				{
					for(std::size_t i = 0; i <= words; ++i)
					{
						row[i] ^= basis[b][i];
					}
				}
			}
		}

		std::size_t lead = npos;
		for(std::size_t w = 0; w < words; ++w)
		{
			if(row[w])
			{
				lead = w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
				break;
			}
		}

		if(lead == npos)
		{
			if(row[words] & 1u)
			{
				result.consistent = false;
				result.inconsistent_row = r;
				result.rank = basis.size();
				return result;
			}
			continue;
		}

		// Keep the basis fully reduced: clear the new pivot from older rows.
		const std::uint64_t mask = std::uint64_t{1} << (lead % 64);
		for(auto& other : basis)
		{
			if(other[lead / 64] & mask)
			{
				for(std::size_t i = 0; i <= words; ++i)
				{
					other[i] ^= row[i];
				}
			}
		}
		basis_of[lead] = basis.size();
		pivot_col.push_back(lead);
		basis.push_back(std::move(row));
	}

	result.rank = basis.size();
	result.x.assign(cols, 0);
	for(std::size_t b = 0; b < basis.size(); ++b)
	{
		result.x[pivot_col[b]] = static_cast<std::uint8_t>(basis[b][words] & 1u);
	}
	return result;
}

} // namespace artowen
