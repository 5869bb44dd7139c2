// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#pragma once

#include <artowen/image.h>
#include <artowen/scrambler.h>
#include <artowen/sobol.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

namespace artowen
{

struct Point2
{
	double x;
	double y;
};

/// First n points of dimensions (0, 1), optionally scrambled, as fractions.
std::vector<Point2> sobol_points_2d(std::size_t n, const ArtOwenScrambler* scrambler = nullptr);

// ---------------------------------------------------------------------------
// Spectra

/// Power on the integer frequency lattice [-R/2, R/2)^2, DC at the centre.
struct SpectrumGrid
{
	int resolution = 0;
	std::vector<double> power;
	std::size_t realizations = 0;

	double at(int fx, int fy) const
	{
		const int h = resolution / 2;
		return power[static_cast<std::size_t>(fy + h) * resolution + static_cast<std::size_t>(fx + h)];
	}
};

/// P(f) = |sum_j exp(-2 pi i f . x_j)|^2 / N. Throws std::invalid_argument on
/// an empty set or an odd/nonpositive resolution.
SpectrumGrid periodogram(std::span<const Point2> points, int resolution);

/// Realization r of a point-set family.
using PointSetFactory = std::function<std::vector<Point2>(std::uint64_t realization)>;

/// Mean periodogram over realizations 0..count-1. Realizations are summed in
/// fixed blocks merged in index order, so the result does not depend on the
/// worker count (0 = hardware concurrency).
SpectrumGrid average_periodogram(const PointSetFactory& factory, std::size_t realizations,
                                 int resolution, unsigned workers = 0);

/// Mean power per integer radius band round(|f|); band 0 (DC) is left empty.
struct RadialProfile
{
	std::vector<double> mean;
	std::vector<std::size_t> count;
};

RadialProfile radial_average(const SpectrumGrid& spectrum);

/// Log-scaled spectrum image (DC bin clamped to the off-DC maximum).
Image spectrum_image(const SpectrumGrid& spectrum);

void write_profile_csv(std::ostream& out, const RadialProfile& profile);

// ---------------------------------------------------------------------------
// Zoneplate

/// Chirp 0.5 * (1 + sin(c (x^2 + y^2))) with c = pi * R / 2, whose local
/// frequency reaches the pixel Nyquist rate on the unit circle around the
/// origin corner.
double zoneplate_chirp(double x, double y, int resolution);

using Integrand2 = std::function<double(double x, double y)>;

/// Global-sampler render: the first R^2 * spp points of the scrambled 2D
/// Sobol sequence, each pixel averaging the samples that land in it.
/// Throws std::invalid_argument unless R and spp are powers of two.
Image zoneplate(const ArtOwenScrambler& scrambler, std::span<const GeneratorMatrix> matrices,
                int resolution, std::uint32_t spp, const Integrand2& integrand = {});

/// Per-pixel midpoint rule with supersample^2 regular samples.
Image zoneplate_reference(int resolution, int supersample = 32, const Integrand2& integrand = {});

/// Variance across radius bands (pixel units, around the origin corner) of
/// the band-mean of image - reference. Ring-shaped aliasing keeps band means
/// away from zero; unstructured noise averages out.
double ring_artifact_metric(const Image& image, const Image& reference);

// ---------------------------------------------------------------------------
// Point-set quality

/// Minimum toroidal distance divided by sqrt(2 / (sqrt(3) N)). Throws
/// std::invalid_argument for fewer than two points.
double conflict_radius(std::span<const Point2> points);

/// Sum over ordered pairs i != j of exp(-d^2 / (2 sigma^2)), where d is the
/// toroidal distance scaled by sqrt(N). Throws for sigma <= 0.
double blue_noise_energy(std::span<const Point2> points, double sigma);

/// True iff there are exactly 2^k points and every 2^a x 2^(k-a) grid of
/// dyadic boxes holds one point per box.
bool net_check(std::span<const Point2> points, int k);

// ---------------------------------------------------------------------------
// Convergence

/// Point set of size n for trial t.
using SamplerFactory = std::function<std::vector<Point2>(std::size_t n, std::uint64_t trial)>;

struct ConvergenceRow
{
	std::size_t n;
	double mse;
};

/// exp(-((x - cx)^2 + (y - cy)^2) / (2 sigma^2)) on the unit square.
struct Gaussian
{
	double cx = 0.5;
	double cy = 0.5;
	double sigma = 0.25;

	double operator()(double x, double y) const;
	/// Closed form over [0, 1)^2.
	double integral() const;
};

/// The centred Gaussian, Gaussian{}.
double gaussian_integrand(double x, double y);
double gaussian_reference();

/// Integrand used for trial t.
using GaussianFamily = std::function<Gaussian(std::uint64_t trial)>;

/// Centre drawn uniformly from the unit square per trial, sigma 0.25. A
/// fixed centre at (1/2, 1/2) is symmetric under the dyadic structure of
/// unscrambled Sobol points and converges unusually fast.
GaussianFamily random_gaussian_centres(std::uint64_t seed);

/// Mean squared error of the sample mean of the integrand over trials.
/// Trial t uses integrand(t), or the centred Gaussian when integrand is
/// empty. Throws std::invalid_argument when an n is not a power of two.
std::vector<ConvergenceRow> gaussian_convergence(const SamplerFactory& factory,
                                                 std::span<const std::size_t> n_values,
                                                 std::size_t trials,
                                                 const GaussianFamily& integrand = {});

/// Least-squares slope of log2(mse) against log2(n).
double fit_loglog_slope(std::span<const ConvergenceRow> rows);

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows);

} // namespace artowen
