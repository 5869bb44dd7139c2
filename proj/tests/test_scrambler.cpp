// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/analysis.h>
#include <artowen/scrambler.h>

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

namespace
{

using artowen::ArtOwenScrambler;
using artowen::ExplicitTree;
using artowen::Grammar;
using artowen::ScrambleData;

Grammar single_symbol()
{
	return Grammar({{0, 0}}, 0);
}

// Flip bit of node (level, prefix) straight from the definition: XOR over the
// ancestors j of bit (level - j) of the ancestor's vector.
std::uint8_t definition_flip(const ArtOwenScrambler& s, std::size_t dim, int level, std::uint32_t prefix)
{
	const auto& g = s.grammar();
	const auto& data = s.data()[dim];
	artowen::Symbol symbol = g.start();
	std::uint8_t flip = 0;
	for(int j = 0; j <= level; ++j)
	{
		flip ^= (data[symbol] >> (31 - (level - j))) & 1u;
		if(j < level)
		{
			symbol = g[symbol].child((prefix >> (level - 1 - j)) & 1u);
		}
	}
	return flip;
}

TEST(ScramblerTest, ZeroDataIsIdentity)
{
	artowen::Rng rng(1);
	for(const auto& g : {artowen::build_tm_grammar(1), artowen::build_tm_grammar(6), single_symbol()})
	{
		const ArtOwenScrambler s(g, {ScrambleData::zero(g.size(), 32)}, 32);
		for(int t = 0; t < 1000; ++t)
		{
			const auto x = rng.next_u32();
			EXPECT_EQ(s.scramble(x, 0), x);
			EXPECT_EQ(s.unscramble(x, 0), x);
		}
	}
}

TEST(ScramblerTest, SingleSymbolIsPrefixXor)
{
	artowen::Rng rng(2);
	for(int t = 0; t < 4; ++t)
	{
		const std::uint32_t v = rng.next_u32() & 0xffff0000u;
		const ArtOwenScrambler s(single_symbol(), {ScrambleData({v}, 16)}, 16, 16);
		const std::uint32_t code = artowen::prefix_xor(v) >> 16;
		for(std::uint32_t x = 0; x < (1u << 16); ++x)
		{
			ASSERT_EQ(s.scramble(x, 0), artowen::xor_scramble(x, code));
			ASSERT_EQ(s.unscramble(x, 0), x ^ code);
		}
	}
}

TEST(ScramblerTest, XorCodeFromPrefixInverse)
{
	const std::uint32_t code = 0x5a3c0000u;
	const std::uint32_t v = artowen::prefix_xor_inverse(code);
	EXPECT_EQ(artowen::prefix_xor(v), code);
	const ArtOwenScrambler s(single_symbol(), {ScrambleData({v}, 32)}, 32);
	EXPECT_EQ(s.scramble(0x12345678u, 0), 0x12345678u ^ code);
	EXPECT_EQ(artowen::xor_scramble(code, code), 0u);
	EXPECT_EQ(artowen::prefix_xor(0x80000000u), 0xffffffffu);
}

TEST(ScramblerTest, TreeScrambleExamples)
{
	const auto t = ExplicitTree::parse("1,01,1101,10010010");
	EXPECT_EQ(t.to_string(), "1,01,1101,10010010");
	EXPECT_EQ(artowen::tree_scramble(0b0000, t), 0b1011u);
	EXPECT_EQ(artowen::tree_scramble(0b1111, t), 0b0001u);
	for(std::uint32_t x = 0; x < 16; ++x)
	{
		EXPECT_EQ(artowen::tree_scramble(x, ExplicitTree::zero(4)), x);
	}
	EXPECT_THROW(ExplicitTree::parse("1,0"), std::invalid_argument);
	EXPECT_THROW(ExplicitTree::parse("1,02"), std::invalid_argument);
}

TEST(ScramblerTest, ExpandTwoSymbolThueMorse)
{
	const auto g = artowen::build_tm_grammar(1);
	const ArtOwenScrambler s(g, {ScrambleData({0x80000000u, 0u}, 3)}, 3);
	const auto tree = artowen::expand_to_tree(s, 0, 3);
	// Only symbol-0 nodes flip; the symbol is the parity of the path.
	EXPECT_EQ(tree.to_string(), "1,10,1001");
	for(std::uint32_t x = 0; x < 8; ++x)
	{
		EXPECT_EQ(s.scramble(x << 29, 0), artowen::tree_scramble(x, tree) << 29);
	}
}

TEST(ScramblerTest, ExpandSingleSymbol)
{
	const std::uint32_t v = 0xb4000000u;
	const ArtOwenScrambler s(single_symbol(), {ScrambleData({v}, 6)}, 6);
	const auto tree = artowen::expand_to_tree(s, 0, 6);
	const auto p = artowen::prefix_xor(v);
	for(int l = 0; l < 6; ++l)
	{
		for(std::uint32_t node = 0; node < (1u << l); ++node)
		{
			EXPECT_EQ(tree.flip(l, node), (p >> (31 - l)) & 1u);
		}
	}
}

TEST(ScramblerTest, ExpandMatchesDefinitionAndScramble)
{
	artowen::Rng rng(3);
	for(int t = 0; t < 40; ++t)
	{
		const auto g = artowen::build_random_grammar(1 + rng.below(12), rng, false);
		const int depth = 1 + static_cast<int>(rng.below(10));
		const auto s = ArtOwenScrambler::random(g, 2, depth, rng.next_u64());
		const auto tree = artowen::expand_to_tree(s, 1, depth);
		for(int l = 0; l < depth; ++l)
		{
			for(std::uint32_t p = 0; p < (1u << l); ++p)
			{
				ASSERT_EQ(tree.flip(l, p), definition_flip(s, 1, l, p));
			}
		}
		for(std::uint32_t x = 0; x < (1u << depth); ++x)
		{
			const std::uint32_t low = rng.next_u32() >> depth;
			const std::uint32_t aligned = (x << (32 - depth)) | low;
			ASSERT_EQ(s.scramble(aligned, 1), (artowen::tree_scramble(x, tree) << (32 - depth)) | low);
		}
	}
	const auto s = ArtOwenScrambler::random(artowen::build_tm_grammar(1), 1, 32, 1);
	EXPECT_THROW(artowen::expand_to_tree(s, 0, 25), std::invalid_argument);
}

TEST(ScramblerTest, RoundTripAndBijective)
{
	artowen::Rng rng(4);
	for(int t = 0; t < 20; ++t)
	{
		const auto g = artowen::build_tm_grammar(1 + rng.below(6));
		const int bits = 12;
		const auto s = ArtOwenScrambler::random(g, 1, 1 + static_cast<int>(rng.below(bits)), rng.next_u64(), bits);
		std::vector<bool> hit(1u << bits, false);
		for(std::uint32_t x = 0; x < (1u << bits); ++x)
		{
			const auto y = s.scramble(x, 0);
			ASSERT_LT(y, 1u << bits);
			ASSERT_FALSE(hit[y]);
			hit[y] = true;
			ASSERT_EQ(s.unscramble(y, 0), x);
		}
	}
}

TEST(ScramblerTest, TableWalkMatchesLevelwise)
{
	artowen::Rng rng(14);
	for(int t = 0; t < 200; ++t)
	{
		const auto g = artowen::build_random_grammar(1 + rng.below(40), rng, false);
		const int bits = 1 + static_cast<int>(rng.below(32));
		const int depth = static_cast<int>(rng.below(bits + 1));
		const auto s = ArtOwenScrambler::random(g, 1, depth, rng.next_u64(), bits);
		for(int i = 0; i < 200; ++i)
		{
			const std::uint32_t x = static_cast<std::uint32_t>(rng.next_u64() >> (64 - bits));
			ASSERT_EQ(s.scramble(x, 0), s.scramble_levelwise(x, 0));
			ASSERT_EQ(s.unscramble(x, 0), s.unscramble_levelwise(x, 0));
		}
	}
}

TEST(ScramblerTest, PrefixConsistency)
{
	const auto s = ArtOwenScrambler::random(artowen::build_tm_grammar(4), 1, 32, 77);
	artowen::Rng rng(5);
	for(int t = 0; t < 2000; ++t)
	{
		const auto x = rng.next_u32();
		const int d = 1 + static_cast<int>(rng.below(31));
		const auto x2 = (x & (~0u << (32 - d))) | (rng.next_u32() >> d);
		ASSERT_EQ(s.scramble(x, 0) >> (32 - d), s.scramble(x2, 0) >> (32 - d));
	}
}

TEST(ScramblerTest, DepthTruncationPassesLowBits)
{
	const auto s = ArtOwenScrambler::random(artowen::build_tm_grammar(3), 1, 8, 9);
	for(std::uint32_t x : {0x00ffffffu, 0x12345678u, 0xdeadbeefu})
	{
		EXPECT_EQ(s.scramble(x, 0) & 0x00ffffffu, x & 0x00ffffffu);
	}
}

TEST(ScramblerTest, PerDimensionTablesDiffer)
{
	const auto a = ArtOwenScrambler::random(artowen::build_tm_grammar(4), 2, 32, 10);
	const auto b = ArtOwenScrambler::random(artowen::build_tm_grammar(4), 2, 32, 10);
	EXPECT_EQ(a.data(), b.data());
	EXPECT_NE(a.data()[0], a.data()[1]);
}

TEST(ScramblerTest, ScramblePointLiftsPerDimension)
{
	const auto s = ArtOwenScrambler::random(artowen::build_tm_grammar(2), 3, 32, 12);
	const artowen::SamplePoint p{{1u, 2u, 3u}};
	const auto q = artowen::scramble_point(p, s);
	for(std::size_t d = 0; d < 3; ++d)
	{
		EXPECT_EQ(q.coords[d], s.scramble(p.coords[d], d));
	}
	EXPECT_THROW(artowen::scramble_point(artowen::SamplePoint{{1, 2, 3, 4}}, s), std::invalid_argument);
}

TEST(ScramblerTest, InvalidConfigurations)
{
	const auto g = artowen::build_tm_grammar(2);
	EXPECT_THROW(ScrambleData({0x1u}, 8), std::invalid_argument);
	EXPECT_THROW(ScrambleData::zero(2, 33), std::invalid_argument);
	EXPECT_THROW(ArtOwenScrambler(g, {ScrambleData::zero(3, 8)}, 8), std::invalid_argument);
	EXPECT_THROW(ArtOwenScrambler(g, {ScrambleData::zero(4, 4)}, 8), std::invalid_argument);
	EXPECT_THROW(ArtOwenScrambler(g, {ScrambleData::zero(4, 16)}, 16, 8), std::invalid_argument);
}

TEST(ScramblerTest, ScrambleDataTextRoundTrip)
{
	artowen::Rng rng(6);
	const auto data = ScrambleData::random(5, 20, rng);
	for(auto v : data.vectors())
	{
		EXPECT_EQ(v & 0xfffu, 0u);
	}
	std::stringstream io;
	artowen::write_scramble_data(io, data);
	EXPECT_EQ(artowen::read_scramble_data(io), data);
}

TEST(ScramblerTest, BurleyPreservesNets)
{
	EXPECT_EQ(artowen::burley_hash_scramble(12345u, 678u), artowen::burley_hash_scramble(12345u, 678u));
	const auto matrices = artowen::default_matrices();
	artowen::Rng rng(7);
	for(int t = 0; t < 100; ++t)
	{
		const auto sx = rng.next_u32(), sy = rng.next_u32();
		std::vector<artowen::Point2> pts;
		for(std::uint32_t i = 0; i < 256; ++i)
		{
			pts.push_back({artowen::to_unit(artowen::burley_hash_scramble(matrices[0].apply(i), sx)),
			               artowen::to_unit(artowen::burley_hash_scramble(matrices[1].apply(i), sy))});
		}
		ASSERT_TRUE(artowen::net_check(pts, 8));
	}
}

TEST(ScramblerTest, EnumerateIdentityExample)
{
	const auto g = artowen::build_tm_grammar(1);
	const ArtOwenScrambler s(g, {ScrambleData::zero(2, 32), ScrambleData::zero(2, 32)}, 32);
	const auto m = artowen::default_matrices();
	using V = std::vector<std::uint64_t>;
	EXPECT_EQ(artowen::enumerate_pixel_samples(s, m, 0, 0, 1, 4), V{0});
	EXPECT_EQ(artowen::enumerate_pixel_samples(s, m, 1, 1, 1, 4), V{1});
	EXPECT_EQ(artowen::enumerate_pixel_samples(s, m, 0, 1, 1, 4), V{2});
	EXPECT_EQ(artowen::enumerate_pixel_samples(s, m, 1, 0, 1, 4), V{3});
	EXPECT_THROW(artowen::enumerate_pixel_samples(s, m, 2, 0, 1, 4), std::invalid_argument);
}

TEST(ScramblerTest, EnumerateMatchesBruteForce)
{
	const auto s = ArtOwenScrambler::random(artowen::build_tm_grammar(4), 2, 32, 13);
	const auto m = artowen::default_matrices();
	const int k = 3;
	const std::uint64_t n = 1000; // not a power of two on purpose
	std::vector<std::vector<std::uint64_t>> expected(1u << (2 * k));
	for(std::uint64_t i = 0; i < n; ++i)
	{
		const auto x = s.scramble(m[0].apply(i), 0) >> (32 - k);
		const auto y = s.scramble(m[1].apply(i), 1) >> (32 - k);
		expected[(y << k) | x].push_back(i);
	}
	std::size_t total = 0;
	for(std::uint32_t py = 0; py < (1u << k); ++py)
	{
		for(std::uint32_t px = 0; px < (1u << k); ++px)
		{
			const auto got = artowen::enumerate_pixel_samples(s, m, px, py, k, n);
			EXPECT_EQ(got, expected[(py << k) | px]);
			total += got.size();
		}
	}
	EXPECT_EQ(total, n);
}

TEST(ScramblerTest, EnumerateRejectsRankDeficientMatrices)
{
	const auto s = ArtOwenScrambler::random(artowen::build_tm_grammar(1), 2, 32, 1);
	const std::vector<artowen::GeneratorMatrix> same{artowen::GeneratorMatrix::identity(),
	                                                 artowen::GeneratorMatrix::identity()};
	EXPECT_THROW(artowen::enumerate_pixel_samples(s, same, 0, 0, 2, 16), std::runtime_error);
}

} // namespace
