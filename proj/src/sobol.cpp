// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/sobol.h>

#include <algorithm>
#include <sstream>

namespace artowen
{

namespace
{

void check_bits(int bits)
{
	if(bits < 1 || bits > kMaxBits)
	{
		throw std::invalid_argument("bit depth must be in [1, 32]");
	}
}

std::uint32_t reverse32(std::uint32_t v)
{
	v = ((v >> 1) & 0x55555555u) | ((v & 0x55555555u) << 1);
	v = ((v >> 2) & 0x33333333u) | ((v & 0x33333333u) << 2);
	v = ((v >> 4) & 0x0f0f0f0fu) | ((v & 0x0f0f0f0fu) << 4);
	v = ((v >> 8) & 0x00ff00ffu) | ((v & 0x00ff00ffu) << 8);
	return (v >> 16) | (v << 16);
}

} // namespace

GeneratorMatrix::GeneratorMatrix(std::vector<std::uint32_t> columns, int bits)
    : columns_(std::move(columns)), bits_(bits)
{
	check_bits(bits);
	if(columns_.size() != static_cast<std::size_t>(bits))
	{
		throw std::invalid_argument("generator matrix needs exactly one column per bit");
	}
	const std::uint64_t limit = std::uint64_t{1} << bits;
	for(auto c : columns_)
	{
		if(c == 0 || c >= limit)
		{
			throw std::invalid_argument("generator matrix column is zero or too wide");
		}
	}
}

GeneratorMatrix GeneratorMatrix::identity(int bits)
{
	check_bits(bits);
	std::vector<std::uint32_t> columns(bits);
	for(int j = 0; j < bits; ++j)
	{
		columns[j] = 1u << (bits - 1 - j);
	}
	return GeneratorMatrix(std::move(columns), bits);
}

GeneratorMatrix GeneratorMatrix::pascal(int bits)
{
	check_bits(bits);
	// Row r of column j holds C(j, r) mod 2, i.e. r is a bit-subset of j.
	std::vector<std::uint32_t> columns(bits);
	for(int j = 0; j < bits; ++j)
	{
		std::uint32_t c = 0;
		for(int r = 0; r <= j; ++r)
		{
			if((r & j) == r)
			{
				c |= 1u << (bits - 1 - r);
			}
		}
		columns[j] = c;
	}
	return GeneratorMatrix(std::move(columns), bits);
}

GeneratorMatrix GeneratorMatrix::from_direction_numbers(unsigned degree, std::uint32_t coefficients,
                                                        std::span<const std::uint32_t> initial,
                                                        int bits)
{
	check_bits(bits);
	if(degree == 0 || initial.size() != degree)
	{
		throw std::invalid_argument("direction numbers need exactly `degree` initial values");
	}
	for(unsigned i = 0; i < degree; ++i)
	{
		if((initial[i] & 1u) == 0 || (i < 32 && initial[i] >= (std::uint64_t{1} << (i + 1))))
		{
			throw std::invalid_argument("initial direction numbers must be odd and below 2^i");
		}
	}

	// Standard recurrence on 32-bit MSB-aligned direction vectors.
	std::vector<std::uint32_t> v(kMaxBits);
	for(unsigned i = 0; i < kMaxBits; ++i)
	{
		if(i < degree)
		{
			v[i] = initial[i] << (31 - i);
			continue;
		}
		std::uint32_t value = v[i - degree] ^ (v[i - degree] >> degree);
		for(unsigned k = 1; k < degree; ++k)
		{
			if((coefficients >> (degree - 1 - k)) & 1u)
			{
				value ^= v[i - k];
			}
		}
		v[i] = value;
	}

	std::vector<std::uint32_t> columns(v.begin(), v.begin() + bits);
	for(auto& c : columns)
	{
		c >>= (kMaxBits - bits);
	}
	return GeneratorMatrix(std::move(columns), bits);
}

bool GeneratorMatrix::invertible() const
{
	std::vector<std::uint32_t> rows(columns_.begin(), columns_.end());
	int rank = 0;
	for(int bit = bits_ - 1; bit >= 0 && rank < bits_; --bit)
	{
		auto pivot = std::find_if(rows.begin() + rank, rows.end(),
		                          [bit](std::uint32_t r) { return (r >> bit) & 1u; });
		if(pivot == rows.end())
		{
			return false;
		}
		std::iter_swap(rows.begin() + rank, pivot);
		for(std::size_t r = rank + 1; r < rows.size(); ++r)
		{
			if((rows[r] >> bit) & 1u)
			{
				rows[r] ^= rows[rank];
			}
		}
		++rank;
	}
	return rank == bits_;
}

std::uint32_t van_der_corput(std::uint64_t index, int bits)
{
	check_bits(bits);
	if(index >= (std::uint64_t{1} << bits))
	{
		throw std::out_of_range("van_der_corput: index exceeds bit depth");
	}
	return reverse32(static_cast<std::uint32_t>(index)) >> (kMaxBits - bits);
}

SamplePoint sobol_point(std::uint64_t index, std::span<const GeneratorMatrix> matrices)
{
	if(matrices.empty())
	{
		throw std::invalid_argument("sobol_point: no generator matrices");
	}
	const int bits = matrices.front().bits();
	if(index >= (std::uint64_t{1} << bits))
	{
		throw std::out_of_range("sobol_point: index exceeds bit depth");
	}

	SamplePoint point;
	point.coords.reserve(matrices.size());
	for(const auto& m : matrices)
	{
		if(m.bits() != bits)
		{
			throw std::invalid_argument("sobol_point: matrices mix bit depths");
		}
		point.coords.push_back(m.apply(index));
	}
	return point;
}

std::vector<GeneratorMatrix> default_matrices(int bits)
{
	return {GeneratorMatrix::identity(bits), GeneratorMatrix::pascal(bits)};
}

std::vector<GeneratorMatrix> load_direction_numbers(std::istream& in, std::size_t dimensions,
                                                    int bits)
{
	auto matrices = default_matrices(bits);
	if(dimensions <= matrices.size())
	{
		// An empty request still yields the built-in pair.
		if(dimensions > 0)
		{
			matrices.erase(matrices.begin() + static_cast<std::ptrdiff_t>(dimensions), matrices.end());
		}
		return matrices;
	}

	std::string line;
	int line_number = 0;
	bool header = true;
	while(matrices.size() < dimensions && std::getline(in, line))
	{
		++line_number;
		if(header)
		{
			header = false;
			continue;
		}
		if(line.find_first_not_of(" \t\r") == std::string::npos)
		{
			continue;
		}

		std::istringstream fields(line);
		long long d = 0, s = 0, a = 0;
		if(!(fields >> d >> s >> a) || d < 2 || s < 1 || s > 32 || a < 0)
		{
			throw ParseError(line_number, "expected `d s a m_1 .. m_s`");
		}
		std::vector<std::uint32_t> initial;
		long long value = 0;
		while(fields >> value)
		{
			if(value <= 0 || value > 0xffffffffll)
			{
				throw ParseError(line_number, "direction number out of range");
			}
			initial.push_back(static_cast<std::uint32_t>(value));
		}
		if(!fields.eof())
		{
			throw ParseError(line_number, "non-numeric field");
		}
		if(initial.size() != static_cast<std::size_t>(s))
		{
			throw ParseError(line_number, "expected " + std::to_string(s) + " direction numbers");
		}
		// Record d = 2 duplicates the built-in Pascal dimension.
		if(static_cast<std::size_t>(d) != matrices.size() + 1)
		{
			if(static_cast<std::size_t>(d) <= matrices.size())
			{
				continue;
			}
			throw ParseError(line_number, "records out of order");
		}

		try
		{
			auto m = GeneratorMatrix::from_direction_numbers(static_cast<unsigned>(s),
			                                                 static_cast<std::uint32_t>(a),
			                                                 initial, bits);
			if(!m.invertible())
			{
				throw ParseError(line_number, "generator matrix is singular");
			}
			matrices.push_back(std::move(m));
		}
		catch(const std::invalid_argument& e)
		{
			throw ParseError(line_number, e.what());
		}
	}

	if(matrices.size() < dimensions)
	{
		throw ParseError(line_number, "file has fewer dimensions than requested");
	}
	return matrices;
}

} // namespace artowen
