// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#pragma once

#include <artowen/gf2.h>
#include <artowen/grammar.h>
#include <artowen/scrambler.h>

#include <optional>
#include <ostream>
#include <vector>

namespace artowen
{

/// Linear map from stored data bits to tree flip bits.
///
/// Row (level l, prefix p) sits at 2^l - 1 + p. Column (significance j,
/// symbol s) sits at j * N + s, where significance j is vector bit j counted
/// from the MSB. Entry 1 means toggling that data bit toggles that flip bit.
struct Gf2System
{
	std::size_t n_symbols = 0;
	int depth = 0;
	BitMatrix bits;

	static std::size_t row_of(int level, std::uint32_t prefix)
	{
		return (std::size_t{1} << level) - 1 + prefix;
	}
	std::size_t col_of(int significance, Symbol s) const
	{
		return static_cast<std::size_t>(significance) * n_symbols + s;
	}
};

struct TreeNode
{
	int level;
	std::uint32_t prefix;

	bool operator==(const TreeNode&) const = default;
};

TreeNode node_of_row(std::size_t row);

/// Throws std::invalid_argument when depth > 16.
Gf2System build_bit_map(const Grammar& grammar, int depth);

struct UtilizationReport
{
	/// Dots per column, in column order.
	std::vector<std::size_t> column_counts;
	/// Rows no data bit reaches.
	std::vector<std::size_t> zero_rows;
};

UtilizationReport utilization_report(const Gf2System& system);

struct SolveResult
{
	std::optional<ScrambleData> data;
	/// First tree node whose equation became 0 = 1.
	std::optional<TreeNode> inconsistent;
	std::size_t rank = 0;
};

/// Solves for a data table whose tree equals target exactly (free bits zero).
/// Throws std::invalid_argument when target.depth() > 16.
SolveResult solve_for_tree(const Grammar& grammar, const ExplicitTree& target);

/// Binary PGM of the dot matrix: black dots on white, one gray row between
/// consecutive tree levels.
void write_bit_map_pgm(std::ostream& out, const Gf2System& system);

} // namespace artowen
