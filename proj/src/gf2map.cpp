// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/gf2map.h>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace artowen
{

namespace
{

constexpr int kMaxSolveDepth = 16;

} // namespace

TreeNode node_of_row(std::size_t row)
{
	const int level = static_cast<int>(std::bit_width(row + 1)) - 1;
	return {level, static_cast<std::uint32_t>(row + 1 - (std::size_t{1} << level))};
}

Gf2System build_bit_map(const Grammar& grammar, int depth)
{
	if(depth < 0 || depth > kMaxSolveDepth)
	{
		throw std::invalid_argument("build_bit_map: depth must be in [0, 16]");
	}
	Gf2System system;
	system.n_symbols = grammar.size();
	system.depth = depth;
	system.bits = BitMatrix((std::size_t{1} << depth) - 1, grammar.size() * depth);
	if(depth == 0)
	{
		return system;
	}

	// Depth-first walk keeping the symbols on the current path.
	std::vector<Symbol> path{grammar.start()};
	auto visit = [&](auto&& self, int level, std::uint32_t prefix) -> void {
		const auto row = Gf2System::row_of(level, prefix);
		for(int j = 0; j <= level; ++j)
		{
			system.bits.set(row, system.col_of(level - j, path[j]));
		}
		if(level + 1 == depth)
		{
			return;
		}
		for(unsigned bit = 0; bit < 2; ++bit)
		{
			path.push_back(grammar[path.back()].child(bit));
			self(self, level + 1, (prefix << 1) | bit);
			path.pop_back();
		}
	};
	visit(visit, 0, 0);
	return system;
}

UtilizationReport utilization_report(const Gf2System& system)
{
	UtilizationReport report;
	report.column_counts.assign(system.bits.cols(), 0);
	for(std::size_t r = 0; r < system.bits.rows(); ++r)
	{
		bool any = false;
		for(std::size_t c = 0; c < system.bits.cols(); ++c)
		{
			if(system.bits.get(r, c))
			{
				++report.column_counts[c];
				any = true;
			}
		}
		if(!any)
		{
			report.zero_rows.push_back(r);
		}
	}
	return report;
}

SolveResult solve_for_tree(const Grammar& grammar, const ExplicitTree& target)
{
	const int depth = target.depth();
	if(depth > kMaxSolveDepth)
	{
		throw std::invalid_argument("solve_for_tree: depth must be at most 16");
	}
	const auto system = build_bit_map(grammar, depth);

	std::vector<std::uint8_t> rhs(system.bits.rows());
	for(int l = 0; l < depth; ++l)
	{
		for(std::uint32_t p = 0; p < (std::uint32_t{1} << l); ++p)
		{
			rhs[Gf2System::row_of(l, p)] = target.flip(l, p);
		}
	}

	const auto solution = solve_gf2(system.bits, rhs);
	SolveResult result;
	result.rank = solution.rank;
	if(!solution.consistent)
	{
		result.inconsistent = node_of_row(solution.inconsistent_row);
		return result;
	}

	std::vector<std::uint32_t> vectors(grammar.size(), 0);
	for(int j = 0; j < depth; ++j)
	{
		for(Symbol s = 0; s < grammar.size(); ++s)
		{
			if(solution.x[system.col_of(j, s)])
			{
				vectors[s] |= 1u << (31 - j);
			}
		}
	}
	result.data = ScrambleData(std::move(vectors), depth);
	return result;
}

void write_bit_map_pgm(std::ostream& out, const Gf2System& system)
{
	const std::size_t width = system.bits.cols();
	const std::size_t separators = system.depth > 0 ? static_cast<std::size_t>(system.depth - 1) : 0;
	const std::size_t height = system.bits.rows() + separators;
	out << "P5\n" << width << ' ' << height << "\n255\n";

	std::vector<unsigned char> line(width);
	for(int l = 0; l < system.depth; ++l)
	{
		if(l > 0)
		{
			std::fill(line.begin(), line.end(), static_cast<unsigned char>(128));
			out.write(reinterpret_cast<const char*>(line.data()), static_cast<std::streamsize>(width));
		}
		for(std::uint32_t p = 0; p < (std::uint32_t{1} << l); ++p)
		{
			const auto row = Gf2System::row_of(l, p);
			for(std::size_t c = 0; c < width; ++c)
			{
				line[c] = system.bits.get(row, c) ? 0 : 255;
			}
			out.write(reinterpret_cast<const char*>(line.data()), static_cast<std::streamsize>(width));
		}
	}
}

} // namespace artowen
