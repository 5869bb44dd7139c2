// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/analysis.h>

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_set>

namespace
{

using artowen::Point2;

std::vector<Point2> regular_grid(int side)
{
	std::vector<Point2> pts;
	for(int y = 0; y < side; ++y)
	{
		for(int x = 0; x < side; ++x)
		{
			pts.push_back({(x + 0.5) / side, (y + 0.5) / side});
		}
	}
	return pts;
}

double direct_power(const std::vector<Point2>& pts, int fx, int fy)
{
	std::complex<double> sum = 0.0;
	for(const auto& p : pts)
	{
		sum += std::polar(1.0, -2.0 * std::numbers::pi * (fx * p.x + fy * p.y));
	}
	return std::norm(sum) / static_cast<double>(pts.size());
}

// Second net checker: hashes (a, box) pairs instead of filling count arrays.
bool net_check_hash(const std::vector<Point2>& pts, int k)
{
	if(pts.size() != (std::size_t{1} << k))
	{
		return false;
	}
	std::unordered_set<std::uint64_t> seen;
	for(int a = 0; a <= k; ++a)
	{
		for(const auto& p : pts)
		{
			const auto ix = static_cast<std::uint64_t>(std::floor(std::ldexp(p.x, a)));
			const auto iy = static_cast<std::uint64_t>(std::floor(std::ldexp(p.y, k - a)));
			if(!seen.insert((std::uint64_t(a) << 56) | (ix << 28) | iy).second)
			{
				return false;
			}
		}
	}
	return true;
}

artowen::ArtOwenScrambler tm16(std::uint64_t seed)
{
	return artowen::ArtOwenScrambler::random(artowen::build_tm_grammar(6), 2, 32, seed);
}

TEST(AnalysisTest, SobolPoints)
{
	const auto pts = artowen::sobol_points_2d(4);
	ASSERT_EQ(pts.size(), 4u);
	EXPECT_DOUBLE_EQ(pts[2].x, 0.25);
	EXPECT_DOUBLE_EQ(pts[2].y, 0.75);
	EXPECT_TRUE(artowen::net_check(artowen::sobol_points_2d(16), 4));
}

TEST(AnalysisTest, SinglePointHasFlatSpectrum)
{
	const std::vector<Point2> one{{0.123, 0.789}};
	const auto s = artowen::periodogram(one, 16);
	for(double p : s.power)
	{
		EXPECT_NEAR(p, 1.0, 1e-12);
	}
	EXPECT_THROW(artowen::periodogram({}, 16), std::invalid_argument);
	EXPECT_THROW(artowen::periodogram(one, 15), std::invalid_argument);
}

TEST(AnalysisTest, RegularGridSpikes)
{
	const auto pts = regular_grid(16);
	const auto s = artowen::periodogram(pts, 64);
	for(int fy = -32; fy < 32; ++fy)
	{
		for(int fx = -32; fx < 32; ++fx)
		{
			const bool spike = fx % 16 == 0 && fy % 16 == 0;
			EXPECT_NEAR(s.at(fx, fy), spike ? 256.0 : 0.0, 1e-8) << fx << ", " << fy;
		}
	}
	const auto profile = artowen::radial_average(s);
	EXPECT_EQ(profile.count[0], 0u);
	// Bands past 32 only cover the corners of the grid.
	const auto peak = std::max_element(profile.mean.begin() + 1, profile.mean.begin() + 32) - profile.mean.begin();
	EXPECT_EQ(peak, 16);
}

TEST(AnalysisTest, MatchesDirectSumAndIsSymmetric)
{
	const auto pts = artowen::sobol_points_2d(64, nullptr);
	const auto scr = tm16(3);
	const auto scrambled = artowen::sobol_points_2d(64, &scr);
	for(const auto* set : {&pts, &scrambled})
	{
		const auto s = artowen::periodogram(*set, 16);
		EXPECT_NEAR(s.at(0, 0), 64.0, 1e-9);
		for(int fy = -7; fy < 8; ++fy)
		{
			for(int fx = -7; fx < 8; ++fx)
			{
				EXPECT_NEAR(s.at(fx, fy), direct_power(*set, fx, fy), 1e-9);
				EXPECT_NEAR(s.at(fx, fy), s.at(-fx, -fy), 1e-9);
			}
		}
	}
}

TEST(AnalysisTest, ParsevalOnTheFrequencyLattice)
{
	// Exact for distinct points on the 1/R grid, where the R x R frequency
	// block is a full orthogonal basis.
	artowen::Rng rng(1);
	const int R = 32;
	std::set<std::pair<int, int>> cells;
	while(cells.size() < 100)
	{
		cells.insert({static_cast<int>(rng.below(R)), static_cast<int>(rng.below(R))});
	}
	std::vector<Point2> pts;
	for(auto [x, y] : cells)
	{
		pts.push_back({static_cast<double>(x) / R, static_cast<double>(y) / R});
	}
	const auto s = artowen::periodogram(pts, R);
	double mean = 0.0;
	for(double p : s.power)
	{
		mean += p;
	}
	mean /= static_cast<double>(s.power.size());
	EXPECT_NEAR(mean, 1.0, 1e-9);
}

TEST(AnalysisTest, AveragePeriodogram)
{
	const auto pts = artowen::sobol_points_2d(32);
	const auto single = artowen::periodogram(pts, 16);
	const auto same = artowen::average_periodogram([&](std::uint64_t) { return pts; }, 5, 16, 2);
	const auto once = artowen::average_periodogram([&](std::uint64_t) { return pts; }, 1, 16);
	for(std::size_t i = 0; i < single.power.size(); ++i)
	{
		EXPECT_NEAR(same.power[i], single.power[i], 1e-9);
		EXPECT_EQ(once.power[i], single.power[i]);
	}
	auto factory = [](std::uint64_t r) {
		const auto s = tm16(r);
		return artowen::sobol_points_2d(64, &s);
	};
	const auto a = artowen::average_periodogram(factory, 37, 16, 1);
	const auto b = artowen::average_periodogram(factory, 37, 16, 4);
	EXPECT_EQ(a.power, b.power);
	EXPECT_EQ(a.realizations, 37u);
}

TEST(AnalysisTest, RadialAverageOfFlatGrid)
{
	artowen::SpectrumGrid flat{16, std::vector<double>(256, 1.0), 1};
	const auto profile = artowen::radial_average(flat);
	EXPECT_EQ(profile.count[0], 0u);
	for(std::size_t r = 1; r < profile.mean.size(); ++r)
	{
		if(profile.count[r])
		{
			EXPECT_DOUBLE_EQ(profile.mean[r], 1.0);
		}
	}
	std::ostringstream csv;
	artowen::write_profile_csv(csv, profile);
	EXPECT_EQ(csv.str().substr(0, 17), "radius,power,bins");
}

TEST(AnalysisTest, ConflictRadius)
{
	const std::vector<Point2> two{{0.0, 0.0}, {0.5, 0.5}};
	EXPECT_NEAR(artowen::conflict_radius(two), std::sqrt(0.5) / std::sqrt(2.0 / (std::sqrt(3.0) * 2.0)), 1e-12);
	const std::vector<Point2> dup{{0.3, 0.3}, {0.3, 0.3}, {0.9, 0.1}};
	EXPECT_EQ(artowen::conflict_radius(dup), 0.0);
	EXPECT_THROW(artowen::conflict_radius(std::vector<Point2>{{0.1, 0.1}}), std::invalid_argument);
}

TEST(AnalysisTest, BlueNoiseEnergy)
{
	EXPECT_EQ(artowen::blue_noise_energy(std::vector<Point2>{{0.5, 0.5}}, 0.5), 0.0);
	EXPECT_DOUBLE_EQ(artowen::blue_noise_energy(std::vector<Point2>{{0.5, 0.5}, {0.5, 0.5}}, 0.5), 2.0);
	double last = std::numeric_limits<double>::infinity();
	for(double gap : {0.0, 0.05, 0.1, 0.2, 0.3, 0.5})
	{
		const std::vector<Point2> pair{{0.2, 0.2}, {0.2 + gap, 0.2}};
		const double e = artowen::blue_noise_energy(pair, 0.5);
		EXPECT_LT(e, last);
		last = e;
	}
	EXPECT_THROW(artowen::blue_noise_energy(std::vector<Point2>{}, 0.0), std::invalid_argument);
}

TEST(AnalysisTest, MetricsAreTranslationInvariant)
{
	const auto s = tm16(4);
	const auto pts = artowen::sobol_points_2d(256, &s);
	auto shifted = pts;
	for(auto& p : shifted)
	{
		p.x = std::fmod(p.x + 0.37, 1.0);
		p.y = std::fmod(p.y + 0.81, 1.0);
	}
	EXPECT_NEAR(artowen::conflict_radius(pts), artowen::conflict_radius(shifted), 1e-9);
	EXPECT_NEAR(artowen::blue_noise_energy(pts, 0.5), artowen::blue_noise_energy(shifted, 0.5), 1e-9);
}

TEST(AnalysisTest, NetCheckAgreesWithHashOracle)
{
	artowen::Rng rng(5);
	auto first16 = artowen::sobol_points_2d(16);
	EXPECT_TRUE(artowen::net_check(first16, 4));
	first16[3] = first16[7];
	EXPECT_FALSE(artowen::net_check(first16, 4));
	int passes = 0;
	for(int t = 0; t < 100; ++t)
	{
		const int k = 1 + static_cast<int>(rng.below(8));
		const auto s = tm16(rng.next_u64());
		auto pts = artowen::sobol_points_2d(std::size_t{1} << k, &s);
		if(t % 2)
		{
			// Nudge one point into a random spot; usually breaks the net.
			pts[rng.below(pts.size())] = {rng.uniform(), rng.uniform()};
		}
		const bool a = artowen::net_check(pts, k);
		ASSERT_EQ(a, net_check_hash(pts, k));
		passes += a;
	}
	EXPECT_GE(passes, 50);
	EXPECT_LT(passes, 100);
}

TEST(AnalysisTest, ZoneplateBasics)
{
	const auto s = tm16(6);
	const auto m = artowen::default_matrices();
	const auto white = artowen::zoneplate(s, m, 16, 4, [](double, double) { return 1.0; });
	for(double v : white.pixels)
	{
		EXPECT_EQ(v, 1.0);
	}
	EXPECT_EQ(artowen::zoneplate(s, m, 16, 2), artowen::zoneplate(s, m, 16, 2));
	EXPECT_THROW(artowen::zoneplate(s, m, 12, 2), std::invalid_argument);
	EXPECT_NEAR(artowen::zoneplate_chirp(0.0, 0.0, 64), 0.5, 1e-15);
}

TEST(AnalysisTest, ScramblingBreaksZoneplateRings)
{
	const int R = 64;
	const auto m = artowen::default_matrices();
	const auto reference = artowen::zoneplate_reference(R);
	const artowen::ArtOwenScrambler none(artowen::build_tm_grammar(6),
	                                     {artowen::ScrambleData::zero(16, 32), artowen::ScrambleData::zero(16, 32)},
	                                     32);
	const double rings = artowen::ring_artifact_metric(artowen::zoneplate(none, m, R, 4), reference);
	const double noise = artowen::ring_artifact_metric(artowen::zoneplate(tm16(7), m, R, 4), reference);
	EXPECT_GT(rings, 2.0 * noise);
}

TEST(AnalysisTest, GaussianReferenceMatchesQuadrature)
{
	const auto img = artowen::zoneplate_reference(64, 8, artowen::gaussian_integrand);
	double mean = 0.0;
	for(double v : img.pixels)
	{
		mean += v;
	}
	mean /= static_cast<double>(img.pixels.size());
	EXPECT_NEAR(mean, artowen::gaussian_reference(), 1e-6);
}

TEST(AnalysisTest, OffCentreGaussianIntegral)
{
	const artowen::Gaussian g{0.2, 0.9, 0.25};
	const auto img = artowen::zoneplate_reference(64, 8, [&g](double x, double y) { return g(x, y); });
	double mean = 0.0;
	for(double v : img.pixels)
	{
		mean += v;
	}
	mean /= static_cast<double>(img.pixels.size());
	EXPECT_NEAR(mean, g.integral(), 1e-6);

	const auto family = artowen::random_gaussian_centres(3);
	EXPECT_EQ(family(5).cx, artowen::random_gaussian_centres(3)(5).cx);
	EXPECT_NE(family(5).cx, family(6).cx);
}

TEST(AnalysisTest, ConvergenceOfRegularGridOnCentredGaussian)
{
	// Midpoint grids of side 2^j: error falls as h^2, so MSE as n^-2.
	std::vector<std::size_t> ns{16, 64, 256, 1024, 4096};
	const auto rows = artowen::gaussian_convergence(
	    [](std::size_t n, std::uint64_t) { return regular_grid(static_cast<int>(std::lround(std::sqrt(n)))); }, ns, 2);
	EXPECT_NEAR(artowen::fit_loglog_slope(rows), -2.0, 0.05);
}

TEST(AnalysisTest, LogLogSlope)
{
	std::vector<artowen::ConvergenceRow> rows;
	for(std::size_t n = 16; n <= 4096; n *= 2)
	{
		rows.push_back({n, 3.0 * std::pow(static_cast<double>(n), -1.5)});
	}
	EXPECT_NEAR(artowen::fit_loglog_slope(rows), -1.5, 1e-12);
	const std::size_t bad[] = {12};
	EXPECT_THROW(artowen::gaussian_convergence([](std::size_t, std::uint64_t) { return std::vector<Point2>{}; }, bad, 1),
	             std::invalid_argument);
}

TEST(AnalysisTest, PgmOutput)
{
	artowen::Image img(3, 2, 0.5);
	img.at(0, 0) = 0.0;
	img.at(2, 1) = 1.0;
	std::ostringstream out;
	artowen::write_pgm(out, img);
	const auto text = out.str();
	EXPECT_EQ(text.substr(0, 11), "P5\n3 2\n255\n");
	EXPECT_EQ(static_cast<unsigned char>(text[11]), 0);
	EXPECT_EQ(static_cast<unsigned char>(text.back()), 255);
}

} // namespace
