// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/optimize.h>

#include <gtest/gtest.h>

#include <sstream>

namespace
{

using artowen::Objective;
using artowen::ObjectiveKind;
using artowen::Score;

std::vector<artowen::ScrambleData> random_tables(std::size_t n, int depth, artowen::Rng& rng)
{
	return {artowen::ScrambleData::random(n, depth, rng), artowen::ScrambleData::random(n, depth, rng)};
}

TEST(OptimizeTest, CombinedRanksFeasibleFirst)
{
	const Objective o{ObjectiveKind::Combined, 0.2, 0.5};
	const Score feasible_high{0.25, 100.0};
	const Score feasible_low{0.21, 50.0};
	const Score infeasible{0.1, 1.0};
	EXPECT_TRUE(artowen::better(feasible_high, infeasible, o));
	EXPECT_TRUE(artowen::better(feasible_low, feasible_high, o));
	EXPECT_FALSE(artowen::better(infeasible, feasible_low, o));
	EXPECT_FALSE(artowen::better(feasible_low, feasible_low, o));

	const Objective r{ObjectiveKind::ConflictRadius};
	EXPECT_TRUE(artowen::better(feasible_high, feasible_low, r));
	const Objective e{ObjectiveKind::BlueNoiseEnergy};
	EXPECT_TRUE(artowen::better(infeasible, feasible_low, e));
}

TEST(OptimizeTest, NoImprovementMeansOneSweep)
{
	artowen::Rng rng(1);
	const auto g = artowen::build_tm_grammar(2);
	const auto initial = random_tables(g.size(), 32, rng);
	const auto result = artowen::greedy_optimize(g, initial, Objective{}, 5, rng, 256,
	                                             [](const artowen::ArtOwenScrambler&) { return Score{1.0, 0.0}; });
	EXPECT_EQ(result.sweeps, 1u);
	EXPECT_EQ(result.data, initial);
	EXPECT_EQ(result.accepted.size(), 1u);
}

TEST(OptimizeTest, DeterministicAndMonotone)
{
	const auto g = artowen::build_tm_grammar(2);
	const Objective o{ObjectiveKind::Combined, 0.2, 0.5};
	artowen::Rng a(7), b(7);
	const auto ra = artowen::greedy_optimize(g, random_tables(g.size(), 32, a), o, 8, a, 64);
	const auto rb = artowen::greedy_optimize(g, random_tables(g.size(), 32, b), o, 8, b, 64);
	EXPECT_EQ(ra.data, rb.data);
	ASSERT_GE(ra.accepted.size(), 1u);
	for(std::size_t i = 1; i < ra.accepted.size(); ++i)
	{
		EXPECT_TRUE(artowen::better(ra.accepted[i], ra.accepted[i - 1], o));
	}
	EXPECT_EQ(ra.accepted.back().energy, ra.score.energy);
}

TEST(OptimizeTest, ConflictRadiusImprovesInMostRuns)
{
	const auto g = artowen::build_tm_grammar(2);
	const Objective o{ObjectiveKind::ConflictRadius};
	int strict = 0;
	for(std::uint64_t seed = 0; seed < 100; ++seed)
	{
		artowen::Rng rng(seed);
		const auto r = artowen::greedy_optimize(g, random_tables(g.size(), 32, rng), o, 4, rng, 256);
		ASSERT_GE(r.score.conflict_radius, r.accepted.front().conflict_radius);
		strict += r.score.conflict_radius > r.accepted.front().conflict_radius;
	}
	EXPECT_GE(strict, 90);
}

TEST(OptimizeTest, RejectsBadArguments)
{
	artowen::Rng rng(1);
	const auto g = artowen::build_tm_grammar(1);
	EXPECT_THROW(artowen::greedy_optimize(g, random_tables(2, 8, rng), Objective{}, 1, rng, 100),
	             std::invalid_argument);
	EXPECT_THROW(artowen::greedy_optimize(g, {artowen::ScrambleData::zero(2, 8)}, Objective{}, 1, rng),
	             std::invalid_argument);
}

TEST(OptimizeTest, FastCodeEvaluationMatchesGenericPath)
{
	artowen::Rng rng(2);
	for(auto kind : {ObjectiveKind::ConflictRadius, ObjectiveKind::BlueNoiseEnergy, ObjectiveKind::Combined})
	{
		for(double sigma : {0.5, 1.0})
		{
			const Objective o{kind, 0.2, sigma};
			for(int t = 0; t < 20; ++t)
			{
				const auto code = rng.next_u32();
				const auto s = artowen::scrambler_from_code(code);
				const auto pts = artowen::sobol_points_2d(256, &s);
				const auto slow = artowen::evaluate(pts, o);
				const auto fast = artowen::evaluate_code(code, o);
				EXPECT_NEAR(fast.conflict_radius, slow.conflict_radius, 1e-12);
				EXPECT_NEAR(fast.energy, slow.energy, 1e-9 * std::max(1.0, slow.energy));
			}
		}
	}
}

TEST(OptimizeTest, CodeLayout)
{
	const auto s = artowen::scrambler_from_code(0x01020304u);
	EXPECT_EQ(s.data()[0][0], 0x01000000u);
	EXPECT_EQ(s.data()[0][1], 0x02000000u);
	EXPECT_EQ(s.data()[1][0], 0x03000000u);
	EXPECT_EQ(s.data()[1][1], 0x04000000u);
	EXPECT_EQ(s.depth(), 8);
}

TEST(OptimizeTest, ScanSingletonAndMonotone)
{
	const Objective o{ObjectiveKind::Combined, 0.2, 0.5};
	const auto one = artowen::exhaustive_scan(o, 12345, 12346);
	ASSERT_EQ(one.size(), 1u);
	EXPECT_EQ(one[0].code, 12345u);
	EXPECT_EQ(one[0].score.energy, artowen::evaluate_code(12345, o).energy);

	const Objective r{ObjectiveKind::ConflictRadius};
	const auto small = artowen::exhaustive_scan(r, 5000, 6000, {10, 1});
	const auto large = artowen::exhaustive_scan(r, 0, 20000, {10, 1});
	EXPECT_GE(large[0].score.conflict_radius, small[0].score.conflict_radius);
	for(std::size_t i = 1; i < large.size(); ++i)
	{
		EXPECT_TRUE(artowen::scan_before(large[i - 1], large[i], r));
	}
	EXPECT_TRUE(artowen::exhaustive_scan(r, 7, 7).empty());
	EXPECT_THROW(artowen::exhaustive_scan(r, 0, (std::uint64_t{1} << 32) + 1), std::invalid_argument);
}

TEST(OptimizeTest, ScanIndependentOfWorkers)
{
	const Objective o{ObjectiveKind::Combined, 0.3, 0.5};
	const auto a = artowen::exhaustive_scan(o, 1u << 20, (1u << 20) + 70000, {50, 1});
	const auto b = artowen::exhaustive_scan(o, 1u << 20, (1u << 20) + 70000, {50, 3});
	ASSERT_EQ(a.size(), b.size());
	for(std::size_t i = 0; i < a.size(); ++i)
	{
		EXPECT_EQ(a[i].code, b[i].code);
		EXPECT_EQ(a[i].score.energy, b[i].score.energy);
	}
}

TEST(OptimizeTest, CheckpointResumeMatchesOneShot)
{
	const Objective o{ObjectiveKind::Combined, 0.25, 1.0};
	artowen::ScanCheckpoint state{1000, 21000, 1000, o, 20, {}};
	while(state.cursor < state.end)
	{
		artowen::advance_scan(state, 7000, 2);
		std::stringstream io;
		artowen::write_checkpoint(io, state);
		state = artowen::read_checkpoint(io);
	}
	const auto direct = artowen::exhaustive_scan(o, 1000, 21000, {20, 1});
	ASSERT_EQ(state.top.size(), direct.size());
	for(std::size_t i = 0; i < direct.size(); ++i)
	{
		EXPECT_EQ(state.top[i].code, direct[i].code);
		EXPECT_EQ(state.top[i].score.conflict_radius, direct[i].score.conflict_radius);
	}

	std::istringstream junk("not a checkpoint");
	EXPECT_THROW(artowen::read_checkpoint(junk), std::runtime_error);
}

TEST(OptimizeTest, MergeTop)
{
	const Objective r{ObjectiveKind::ConflictRadius};
	const std::vector<artowen::ScanEntry> a{{5, {0.5, 0}}, {1, {0.3, 0}}};
	const std::vector<artowen::ScanEntry> b{{3, {0.5, 0}}, {9, {0.4, 0}}};
	const auto m = artowen::merge_top(a, b, r, 3);
	ASSERT_EQ(m.size(), 3u);
	EXPECT_EQ(m[0].code, 3u);
	EXPECT_EQ(m[1].code, 5u);
	EXPECT_EQ(m[2].code, 9u);
}

} // namespace
