// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/scrambler.h>

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace artowen
{

ScrambleData::ScrambleData(std::vector<std::uint32_t> vectors, int depth)
    : vectors_(std::move(vectors)), depth_(depth)
{
	if(depth < 0 || depth > kMaxBits)
	{
		throw std::invalid_argument("scramble data depth must be in [0, 32]");
	}
	for(auto v : vectors_)
	{
		if(v & ~mask())
		{
			throw std::invalid_argument("scramble vector has bits beyond its depth");
		}
	}
}

ScrambleData ScrambleData::zero(std::size_t n_symbols, int depth)
{
	return ScrambleData(std::vector<std::uint32_t>(n_symbols, 0), depth);
}

ScrambleData ScrambleData::random(std::size_t n_symbols, int depth, Rng& rng)
{
	ScrambleData data = zero(n_symbols, depth);
	for(Symbol s = 0; s < n_symbols; ++s)
	{
		data.set(s, rng.next_u32());
	}
	return data;
}

void write_scramble_data(std::ostream& out, const ScrambleData& data)
{
	out << data.size() << ' ' << data.depth() << '\n';
	const auto flags = out.flags();
	const auto fill = out.fill();
	for(auto v : data.vectors())
	{
		out << std::hex;
		out.width(8);
		out.fill('0');
		out << v << '\n';
	}
	out.flags(flags);
	out.fill(fill);
}

ScrambleData read_scramble_data(std::istream& in)
{
	long long n = 0, depth = -1;
	if(!(in >> n >> depth) || n < 1 || depth < 0 || depth > kMaxBits)
	{
		throw ParseError(1, "expected `N depth` with N >= 1 and depth <= 32");
	}
	std::vector<std::uint32_t> vectors;
	vectors.reserve(static_cast<std::size_t>(n));
	for(long long i = 0; i < n; ++i)
	{
		std::string word;
		if(!(in >> word))
		{
			throw ParseError(static_cast<int>(i + 2), "missing data vector");
		}
		std::size_t used = 0;
		unsigned long value = 0;
		try
		{
			value = std::stoul(word, &used, 16);
		}
		catch(const std::exception&)
		{
			used = 0;
		}
		if(used != word.size() || value > 0xfffffffful)
		{
			throw ParseError(static_cast<int>(i + 2), "malformed hexadecimal word `" + word + "`");
		}
		vectors.push_back(static_cast<std::uint32_t>(value));
	}
	try
	{
		return ScrambleData(std::move(vectors), static_cast<int>(depth));
	}
	catch(const std::invalid_argument& e)
	{
		throw ParseError(1, e.what());
	}
}

ArtOwenScrambler::ArtOwenScrambler(Grammar grammar, std::vector<ScrambleData> data, int depth,
                                   int bits)
    : grammar_(std::move(grammar)), data_(std::move(data)), depth_(depth), bits_(bits)
{
	if(bits < 1 || bits > kMaxBits || depth < 0 || depth > bits)
	{
		throw std::invalid_argument("scrambler needs 0 <= depth <= bits <= 32");
	}
	for(const auto& d : data_)
	{
		if(d.size() != grammar_.size())
		{
			throw std::invalid_argument("data table size differs from the alphabet size");
		}
		if(d.depth() < depth)
		{
			throw std::invalid_argument("data table is shallower than the scrambling depth");
		}
	}
	const std::size_t n = grammar_.size();
	if(n >= (std::size_t{1} << (32 - kChunkBits - 1)))
	{
		throw std::invalid_argument("alphabet too large for the scrambler tables");
	}
	table_.reserve(2 * n);
	for(const auto& p : grammar_.productions())
	{
		table_.push_back(p.left);
		table_.push_back(p.right);
	}
	depth_mask_ = depth_ == 0 ? 0u : ~0u << (32 - depth_);

	constexpr std::uint32_t width = 1u << kChunkBits;
	for(const auto& d : data_)
	{
		std::vector<std::uint64_t> chunks(n * width);
		std::vector<std::uint8_t> inverse(n * width);
		for(Symbol s = 0; s < n; ++s)
		{
			for(std::uint32_t c = 0; c < width; ++c)
			{
				std::uint32_t flips = 0;
				Symbol symbol = s;
				for(int i = 0; i < kChunkBits; ++i)
				{
					flips ^= d[symbol] >> i;
					symbol = table_[2 * symbol + ((c >> (kChunkBits - 1 - i)) & 1u)];
				}
				chunks[s * width + c] = (std::uint64_t{flips} << 32) | (symbol << kChunkBits);
				const std::uint32_t out = c ^ (flips >> (32 - kChunkBits));
				inverse[s * width + out] = static_cast<std::uint8_t>(c);
			}
		}
		chunks_.push_back(std::move(chunks));
		inverse_.push_back(std::move(inverse));
	}
}

ArtOwenScrambler ArtOwenScrambler::random(Grammar grammar, std::size_t dimensions, int depth,
                                          std::uint64_t seed, int bits)
{
	std::vector<ScrambleData> data;
	data.reserve(dimensions);
	for(std::size_t d = 0; d < dimensions; ++d)
	{
		Rng rng(derive_seed(seed, d));
		data.push_back(ScrambleData::random(grammar.size(), depth, rng));
	}
	return ArtOwenScrambler(std::move(grammar), std::move(data), depth, bits);
}

SamplePoint scramble_point(const SamplePoint& p, const ArtOwenScrambler& s)
{
	if(p.coords.size() > s.dimensions())
	{
		throw std::invalid_argument("point has more dimensions than the scrambler");
	}
	SamplePoint out;
	out.coords.reserve(p.coords.size());
	for(std::size_t d = 0; d < p.coords.size(); ++d)
	{
		out.coords.push_back(s.scramble(p.coords[d], d));
	}
	return out;
}

ExplicitTree::ExplicitTree(std::vector<std::vector<std::uint8_t>> levels) : levels_(std::move(levels))
{
	for(std::size_t l = 0; l < levels_.size(); ++l)
	{
		if(l >= 32 || levels_[l].size() != (std::size_t{1} << l))
		{
			throw std::invalid_argument("tree level l must hold exactly 2^l bits");
		}
		for(auto b : levels_[l])
		{
			if(b > 1)
			{
				throw std::invalid_argument("tree flip bits must be 0 or 1");
			}
		}
	}
}

ExplicitTree ExplicitTree::zero(int depth)
{
	std::vector<std::vector<std::uint8_t>> levels;
	for(int l = 0; l < depth; ++l)
	{
		levels.emplace_back(std::size_t{1} << l, 0);
	}
	return ExplicitTree(std::move(levels));
}

ExplicitTree ExplicitTree::random(int depth, Rng& rng)
{
	auto tree = zero(depth);
	for(auto& level : tree.levels_)
	{
		for(auto& b : level)
		{
			b = static_cast<std::uint8_t>(rng.next_u64() >> 63);
		}
	}
	return tree;
}

ExplicitTree ExplicitTree::parse(const std::string& text)
{
	std::vector<std::vector<std::uint8_t>> levels;
	std::stringstream stream(text);
	std::string token;
	while(std::getline(stream, token, ','))
	{
		token.erase(std::remove_if(token.begin(), token.end(),
		                           [](char c) { return c == ' ' || c == '\n' || c == '\r'; }),
		            token.end());
		std::vector<std::uint8_t> level;
		for(char c : token)
		{
			if(c != '0' && c != '1')
			{
				throw std::invalid_argument("tree text may only contain 0, 1 and commas");
			}
			level.push_back(static_cast<std::uint8_t>(c - '0'));
		}
		levels.push_back(std::move(level));
	}
	return ExplicitTree(std::move(levels));
}

std::string ExplicitTree::to_string() const
{
	std::string text;
	for(std::size_t l = 0; l < levels_.size(); ++l)
	{
		if(l)
		{
			text += ',';
		}
		for(auto b : levels_[l])
		{
			text += static_cast<char>('0' + b);
		}
	}
	return text;
}

ExplicitTree expand_to_tree(const ArtOwenScrambler& s, std::size_t dim, int depth)
{
	if(depth < 0 || depth > s.depth() || depth > 24)
	{
		throw std::invalid_argument("expand_to_tree: depth exceeds scrambler depth or 24");
	}
	if(dim >= s.dimensions())
	{
		throw std::invalid_argument("expand_to_tree: no such dimension");
	}
	const auto& grammar = s.grammar();
	const auto& data = s.data()[dim];

	// Node state: its symbol and the accumulated ancestor vectors, aligned so
	// that the MSB is the node's own flip bit.
	struct Node
	{
		Symbol symbol;
		std::uint32_t pending;
	};
	std::vector<std::vector<std::uint8_t>> levels;
	std::vector<Node> nodes{{grammar.start(), data[grammar.start()]}};
	for(int l = 0; l < depth; ++l)
	{
		std::vector<std::uint8_t> flips(nodes.size());
		std::vector<Node> children;
		if(l + 1 < depth)
		{
			children.reserve(2 * nodes.size());
		}
		for(std::size_t p = 0; p < nodes.size(); ++p)
		{
			flips[p] = static_cast<std::uint8_t>(nodes[p].pending >> 31);
			if(l + 1 < depth)
			{
				for(unsigned bit = 0; bit < 2; ++bit)
				{
					const auto child = grammar[nodes[p].symbol].child(bit);
					children.push_back({child, (nodes[p].pending << 1) ^ data[child]});
				}
			}
		}
		levels.push_back(std::move(flips));
		nodes = std::move(children);
	}
	return ExplicitTree(std::move(levels));
}

std::uint32_t tree_scramble(std::uint32_t x, const ExplicitTree& tree)
{
	const int depth = tree.depth();
	if(depth < 32 && x >= (std::uint32_t{1} << depth))
	{
		throw std::out_of_range("tree_scramble: input wider than the tree");
	}
	std::uint32_t out = 0;
	for(int l = 0; l < depth; ++l)
	{
		const std::uint32_t bit = (x >> (depth - 1 - l)) & 1u;
		const std::uint32_t prefix = l == 0 ? 0u : x >> (depth - l);
		out |= (bit ^ tree.flip(l, prefix)) << (depth - 1 - l);
	}
	return out;
}

std::uint32_t prefix_xor(std::uint32_t v)
{
	// MSB-first prefix XOR is a cascade of right shifts.
	v ^= v >> 1;
	v ^= v >> 2;
	v ^= v >> 4;
	v ^= v >> 8;
	v ^= v >> 16;
	return v;
}

std::uint32_t prefix_xor_inverse(std::uint32_t v)
{
	return v ^ (v >> 1);
}

std::uint32_t reverse_bits(std::uint32_t v)
{
	v = ((v >> 1) & 0x55555555u) | ((v & 0x55555555u) << 1);
	v = ((v >> 2) & 0x33333333u) | ((v & 0x33333333u) << 2);
	v = ((v >> 4) & 0x0f0f0f0fu) | ((v & 0x0f0f0f0fu) << 4);
	v = ((v >> 8) & 0x00ff00ffu) | ((v & 0x00ff00ffu) << 8);
	return (v >> 16) | (v << 16);
}

std::uint32_t burley_hash_scramble(std::uint32_t x, std::uint32_t seed, int bits)
{
	// Each step only carries information from low to high bits, so after the
	// reversal every output digit depends on the digits above it alone.
	std::uint32_t v = reverse_bits(x << (32 - bits));
	v += seed;
	v ^= v * 0x6c50b47cu;
	v ^= v * 0xb82f1e52u;
	v ^= v * 0xc7afe638u;
	v ^= v * 0x8d22f6e6u;
	return reverse_bits(v) >> (32 - bits);
}

std::vector<std::uint64_t> enumerate_pixel_samples(const ArtOwenScrambler& s,
                                                   std::span<const GeneratorMatrix> matrices,
                                                   std::uint32_t px, std::uint32_t py,
                                                   int grid_log2, std::uint64_t count)
{
	if(matrices.size() < 2 || s.dimensions() < 2)
	{
		throw std::invalid_argument("enumerate_pixel_samples needs two dimensions");
	}
	const int m = s.bits();
	const int k = grid_log2;
	if(matrices[0].bits() != m || matrices[1].bits() != m)
	{
		throw std::invalid_argument("matrix and scrambler bit depths differ");
	}
	if(k < 0 || k > m || 2 * k > 62 || (k < 32 && (px >> k || py >> k)))
	{
		throw std::invalid_argument("pixel outside the grid");
	}
	if(count > (std::uint64_t{1} << m))
	{
		throw std::invalid_argument("sample count exceeds 2^bits");
	}
	if(count == 0)
	{
		return {};
	}

	// Leading k digits are a function of the leading k input digits alone, so
	// unscrambling the pixel corner yields the original prefix.
	const std::uint32_t targets[2] = {
	    k == 0 ? 0u : s.unscramble(px << (m - k), 0) >> (m - k),
	    k == 0 ? 0u : s.unscramble(py << (m - k), 1) >> (m - k),
	};

	// Rows: coefficient bits 0..m-1 over index bits, right-hand side in bit 63.
	constexpr std::uint64_t rhs_bit = std::uint64_t{1} << 63;
	std::vector<std::uint64_t> rows;
	for(int d = 0; d < 2; ++d)
	{
		for(int r = 0; r < k; ++r)
		{
			std::uint64_t row = 0;
			for(int j = 0; j < m; ++j)
			{
				if(matrices[d].entry(r, j))
				{
					row |= std::uint64_t{1} << j;
				}
			}
			if((targets[d] >> (k - 1 - r)) & 1u)
			{
				row |= rhs_bit;
			}
			rows.push_back(row);
		}
	}

	auto eliminate = [](std::vector<std::uint64_t>& system, std::uint64_t column_mask) {
		std::vector<int> pivots;
		std::size_t rank = 0;
		for(int col = 0; col < 63 && rank < system.size(); ++col)
		{
			const std::uint64_t bit = std::uint64_t{1} << col;
			if(!(column_mask & bit))
			{
				continue;
			}
			auto it = std::find_if(system.begin() + rank, system.end(),
			                       [bit](std::uint64_t r) { return r & bit; });
			if(it == system.end())
			{
				continue;
			}
			std::iter_swap(system.begin() + rank, it);
			for(std::size_t r = 0; r < system.size(); ++r)
			{
				if(r != rank && (system[r] & bit))
				{
					system[r] ^= system[rank];
				}
			}
			pivots.push_back(col);
			++rank;
		}
		return pivots;
	};

	const std::uint64_t all_columns = m == 64 ? ~0ull : (std::uint64_t{1} << m) - 1;
	{
		auto check = rows;
		if(eliminate(check, all_columns).size() != rows.size())
		{
			throw std::runtime_error("pixel constraint system is singular; bad generator matrices");
		}
	}

	// Restrict to indices below 2^B, B = bit width of count - 1.
	const int width = static_cast<int>(std::bit_width(count - 1));
	const std::uint64_t free_columns = width == 0 ? 0 : (std::uint64_t{1} << width) - 1;
	for(auto& row : rows)
	{
		row &= free_columns | rhs_bit;
	}
	const auto pivots = eliminate(rows, free_columns);
	for(std::size_t r = pivots.size(); r < rows.size(); ++r)
	{
		if(rows[r] & rhs_bit)
		{
			return {};
		}
	}

	std::uint64_t pivot_mask = 0;
	for(int p : pivots)
	{
		pivot_mask |= std::uint64_t{1} << p;
	}
	std::vector<int> free_bits;
	for(int j = 0; j < width; ++j)
	{
		if(!(pivot_mask & (std::uint64_t{1} << j)))
		{
			free_bits.push_back(j);
		}
	}

	std::vector<std::uint64_t> result;
	const std::uint64_t combos = std::uint64_t{1} << free_bits.size();
	for(std::uint64_t c = 0; c < combos; ++c)
	{
		std::uint64_t index = 0;
		for(std::size_t f = 0; f < free_bits.size(); ++f)
		{
			if((c >> f) & 1u)
			{
				index |= std::uint64_t{1} << free_bits[f];
			}
		}
		// Reduced rows: pivot bit = rhs XOR free bits present in the row.
		for(std::size_t r = 0; r < pivots.size(); ++r)
		{
			const std::uint64_t others = rows[r] & free_columns & ~(std::uint64_t{1} << pivots[r]);
			const unsigned value = static_cast<unsigned>((rows[r] >> 63) & 1u) ^
			                       (std::popcount(others & index) & 1u);
			if(value)
			{
				index |= std::uint64_t{1} << pivots[r];
			}
		}
		if(index < count)
		{
			result.push_back(index);
		}
	}
	std::sort(result.begin(), result.end());
	return result;
}

} // namespace artowen
