// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/analysis.h>
#include <artowen/rng.h>

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace artowen
{

namespace
{

double toroidal_delta(double a, double b)
{
	double d = std::abs(a - b);
	return d > 0.5 ? 1.0 - d : d;
}

double toroidal_distance2(const Point2& a, const Point2& b)
{
	const double dx = toroidal_delta(a.x, b.x);
	const double dy = toroidal_delta(a.y, b.y);
	return dx * dx + dy * dy;
}

void check_power_of_two(std::uint64_t v, const char* what)
{
	if(!std::has_single_bit(v))
	{
		throw std::invalid_argument(std::string(what) + " must be a power of two");
	}
}

} // namespace

std::vector<Point2> sobol_points_2d(std::size_t n, const ArtOwenScrambler* scrambler)
{
	const int bits = scrambler ? scrambler->bits() : kMaxBits;
	const auto matrices = default_matrices(bits);
	if(n > (std::uint64_t{1} << bits))
	{
		throw std::invalid_argument("sobol_points_2d: more points than 2^bits");
	}
	std::vector<Point2> points(n);
	for(std::size_t i = 0; i < n; ++i)
	{
		std::uint32_t x = matrices[0].apply(i);
		std::uint32_t y = matrices[1].apply(i);
		if(scrambler)
		{
			x = scrambler->scramble(x, 0);
			y = scrambler->scramble(y, 1);
		}
		points[i] = {to_unit(x, bits), to_unit(y, bits)};
	}
	return points;
}

SpectrumGrid periodogram(std::span<const Point2> points, int resolution)
{
	if(points.empty())
	{
		throw std::invalid_argument("periodogram: empty point set");
	}
	if(resolution <= 0 || resolution % 2)
	{
		throw std::invalid_argument("periodogram: resolution must be positive and even");
	}
	const auto n = static_cast<Eigen::Index>(points.size());
	const int r = resolution;
	const int h = r / 2;

	// exp(-2 pi i f x) for f = -h .. h-1, built by repeated rotation from f = -h.
	Eigen::MatrixXcd ex(n, r), ey(n, r);
	auto fill = [&](Eigen::MatrixXcd& m, Eigen::Index j, double coord) {
		const double angle = -2.0 * std::numbers::pi * coord;
		const std::complex<double> step = std::polar(1.0, angle);
		std::complex<double> value = std::polar(1.0, angle * -h);
		for(int f = 0; f < r; ++f)
		{
			m(j, f) = value;
			value *= step;
			if((f & 15) == 15)
			{
				value = std::polar(1.0, angle * (f + 1 - h));
			}
		}
	};
	for(Eigen::Index j = 0; j < n; ++j)
	{
		fill(ex, j, points[j].x);
		fill(ey, j, points[j].y);
	}

	const Eigen::MatrixXcd sums = ex.transpose() * ey;
	SpectrumGrid grid;
	grid.resolution = r;
	grid.realizations = 1;
	grid.power.resize(static_cast<std::size_t>(r) * r);
	const double inv_n = 1.0 / static_cast<double>(n);
	for(int fy = 0; fy < r; ++fy)
	{
		for(int fx = 0; fx < r; ++fx)
		{
			grid.power[static_cast<std::size_t>(fy) * r + fx] = std::norm(sums(fx, fy)) * inv_n;
		}
	}
	return grid;
}

SpectrumGrid average_periodogram(const PointSetFactory& factory, std::size_t realizations,
                                 int resolution, unsigned workers)
{
	if(realizations == 0)
	{
		throw std::invalid_argument("average_periodogram: no realizations");
	}
	constexpr std::size_t kBlock = 8;
	const std::size_t blocks = (realizations + kBlock - 1) / kBlock;
	const std::size_t bins = static_cast<std::size_t>(resolution) * resolution;
	std::vector<std::vector<double>> partial(blocks);

	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::atomic<bool> failed{false};
	auto work = [&]() {
		try
		{
			for(std::size_t b = next++; b < blocks && !failed; b = next++)
			{
				std::vector<double> sum(bins, 0.0);
				const std::size_t end = std::min(realizations, (b + 1) * kBlock);
				for(std::size_t i = b * kBlock; i < end; ++i)
				{
					const auto points = factory(i);
					const auto p = periodogram(points, resolution);
					for(std::size_t k = 0; k < bins; ++k)
					{
						sum[k] += p.power[k];
					}
				}
				partial[b] = std::move(sum);
			}
		}
		catch(...)
		{
			if(!failed.exchange(true))
			{
				failure = std::current_exception();
			}
		}
	};

	if(workers == 0)
	{
		workers = std::max(1u, std::thread::hardware_concurrency());
	}
	workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
	if(workers <= 1)
	{
		work();
	}
	else
	{
		std::vector<std::jthread> pool;
		for(unsigned w = 0; w < workers; ++w)
		{
			pool.emplace_back(work);
		}
	}
	if(failure)
	{
		std::rethrow_exception(failure);
	}

	SpectrumGrid grid;
	grid.resolution = resolution;
	grid.realizations = realizations;
	grid.power.assign(bins, 0.0);
	for(const auto& block : partial)
	{
		for(std::size_t k = 0; k < bins; ++k)
		{
			grid.power[k] += block[k];
		}
	}
	for(auto& v : grid.power)
	{
		v /= static_cast<double>(realizations);
	}
	return grid;
}

RadialProfile radial_average(const SpectrumGrid& spectrum)
{
	const int h = spectrum.resolution / 2;
	const auto bands = static_cast<std::size_t>(std::lround(std::sqrt(2.0) * h)) + 1;
	RadialProfile profile;
	profile.mean.assign(bands, 0.0);
	profile.count.assign(bands, 0);
	for(int fy = -h; fy < h; ++fy)
	{
		for(int fx = -h; fx < h; ++fx)
		{
			if(fx == 0 && fy == 0)
			{
				continue;
			}
			const auto band = static_cast<std::size_t>(std::lround(std::hypot(fx, fy)));
			profile.mean[band] += spectrum.at(fx, fy);
			++profile.count[band];
		}
	}
	for(std::size_t b = 0; b < bands; ++b)
	{
		if(profile.count[b])
		{
			profile.mean[b] /= static_cast<double>(profile.count[b]);
		}
	}
	return profile;
}

Image spectrum_image(const SpectrumGrid& spectrum)
{
	const int r = spectrum.resolution;
	const int h = r / 2;
	double top = 0.0;
	for(int fy = -h; fy < h; ++fy)
	{
		for(int fx = -h; fx < h; ++fx)
		{
			if(fx || fy)
			{
				top = std::max(top, spectrum.at(fx, fy));
			}
		}
	}
	Image image(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
	for(int fy = -h; fy < h; ++fy)
	{
		for(int fx = -h; fx < h; ++fx)
		{
			const double v = std::min(spectrum.at(fx, fy), top);
			image.at(static_cast<std::size_t>(fx + h), static_cast<std::size_t>(fy + h)) = std::log1p(v);
		}
	}
	return image;
}

void write_profile_csv(std::ostream& out, const RadialProfile& profile)
{
	out << "radius,power,bins\n";
	for(std::size_t b = 1; b < profile.mean.size(); ++b)
	{
		if(profile.count[b])
		{
			out << b << ',' << profile.mean[b] << ',' << profile.count[b] << '\n';
		}
	}
}

double zoneplate_chirp(double x, double y, int resolution)
{
	const double c = std::numbers::pi * resolution / 2.0;
	return 0.5 * (1.0 + std::sin(c * (x * x + y * y)));
}

Image zoneplate(const ArtOwenScrambler& scrambler, std::span<const GeneratorMatrix> matrices,
                int resolution, std::uint32_t spp, const Integrand2& integrand)
{
	check_power_of_two(static_cast<std::uint64_t>(std::max(resolution, 0)), "zoneplate resolution");
	check_power_of_two(spp, "samples per pixel");
	const int k = std::countr_zero(static_cast<unsigned>(resolution));
	const std::uint64_t total = std::uint64_t{1} << (2 * k) << std::countr_zero(spp);
	const int bits = scrambler.bits();

	auto f = integrand ? integrand : [resolution](double x, double y) {
		return zoneplate_chirp(x, y, resolution);
	};

	Image image(static_cast<std::size_t>(resolution), static_cast<std::size_t>(resolution));
	for(int py = 0; py < resolution; ++py)
	{
		for(int px = 0; px < resolution; ++px)
		{
			const auto indices = enumerate_pixel_samples(scrambler, matrices, px, py, k, total);
			double sum = 0.0;
			for(auto i : indices)
			{
				const double x = to_unit(scrambler.scramble(matrices[0].apply(i), 0), bits);
				const double y = to_unit(scrambler.scramble(matrices[1].apply(i), 1), bits);
				sum += f(x, y);
			}
			image.at(px, py) = indices.empty() ? 0.0 : sum / static_cast<double>(indices.size());
		}
	}
	return image;
}

Image zoneplate_reference(int resolution, int supersample, const Integrand2& integrand)
{
	check_power_of_two(static_cast<std::uint64_t>(std::max(resolution, 0)), "zoneplate resolution");
	auto f = integrand ? integrand : [resolution](double x, double y) {
		return zoneplate_chirp(x, y, resolution);
	};
	Image image(static_cast<std::size_t>(resolution), static_cast<std::size_t>(resolution));
	const double pixel = 1.0 / resolution;
	const double step = pixel / supersample;
	for(int py = 0; py < resolution; ++py)
	{
		for(int px = 0; px < resolution; ++px)
		{
			double sum = 0.0;
			for(int sy = 0; sy < supersample; ++sy)
			{
				for(int sx = 0; sx < supersample; ++sx)
				{
					sum += f(px * pixel + (sx + 0.5) * step, py * pixel + (sy + 0.5) * step);
				}
			}
			image.at(px, py) = sum / (static_cast<double>(supersample) * supersample);
		}
	}
	return image;
}

double ring_artifact_metric(const Image& image, const Image& reference)
{
	if(image.width != reference.width || image.height != reference.height)
	{
		throw std::invalid_argument("ring_artifact_metric: image sizes differ");
	}
	const auto bands = static_cast<std::size_t>(std::hypot(image.width, image.height)) + 1;
	std::vector<double> sum(bands, 0.0);
	std::vector<std::size_t> count(bands, 0);
	for(std::size_t y = 0; y < image.height; ++y)
	{
		for(std::size_t x = 0; x < image.width; ++x)
		{
			const auto band = static_cast<std::size_t>(std::hypot(x + 0.5, y + 0.5));
			sum[band] += image.at(x, y) - reference.at(x, y);
			++count[band];
		}
	}
	double mean = 0.0, mean2 = 0.0;
	std::size_t used = 0;
	for(std::size_t b = 0; b < bands; ++b)
	{
		if(count[b])
		{
			const double m = sum[b] / static_cast<double>(count[b]);
			mean += m;
			mean2 += m * m;
			++used;
		}
	}
	mean /= static_cast<double>(used);
	mean2 /= static_cast<double>(used);
	return mean2 - mean * mean;
}

double conflict_radius(std::span<const Point2> points)
{
	if(points.size() < 2)
	{
		throw std::invalid_argument("conflict_radius: need at least two points");
	}
	double best = std::numeric_limits<double>::infinity();
	for(std::size_t i = 0; i < points.size(); ++i)
	{
		for(std::size_t j = i + 1; j < points.size(); ++j)
		{
			best = std::min(best, toroidal_distance2(points[i], points[j]));
		}
	}
	const double n = static_cast<double>(points.size());
	const double r_max = std::sqrt(2.0 / (std::sqrt(3.0) * n));
	return std::sqrt(best) / r_max;
}

double blue_noise_energy(std::span<const Point2> points, double sigma)
{
	if(!(sigma > 0.0))
	{
		throw std::invalid_argument("blue_noise_energy: sigma must be positive");
	}
	const double n = static_cast<double>(points.size());
	const double scale = n / (2.0 * sigma * sigma);
	// The closest pair of any set sits within sqrt(2) hexagonal radii, so its
	// term is at least exp(-bound); terms 1e-18 below that are dropped.
	const double cutoff = 2.0 * 2.0 / std::sqrt(3.0) / (2.0 * sigma * sigma) + 41.5;
	double energy = 0.0;
	for(std::size_t i = 0; i < points.size(); ++i)
	{
		for(std::size_t j = i + 1; j < points.size(); ++j)
		{
			const double arg = toroidal_distance2(points[i], points[j]) * scale;
			if(arg < cutoff)
			{
				energy += std::exp(-arg);
			}
		}
	}
	return 2.0 * energy;
}

bool net_check(std::span<const Point2> points, int k)
{
	if(k < 0 || k > 24 || points.size() != (std::size_t{1} << k))
	{
		return false;
	}
	std::vector<std::uint8_t> hits(points.size());
	for(int a = 0; a <= k; ++a)
	{
		std::fill(hits.begin(), hits.end(), 0);
		const double sx = std::ldexp(1.0, a);
		const double sy = std::ldexp(1.0, k - a);
		for(const auto& p : points)
		{
			if(!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0))
			{
				return false;
			}
			const auto ix = static_cast<std::size_t>(p.x * sx);
			const auto iy = static_cast<std::size_t>(p.y * sy);
			auto& cell = hits[(iy << a) | ix];
			if(cell)
			{
				return false;
			}
			cell = 1;
		}
	}
	return true;
}

double Gaussian::operator()(double x, double y) const
{
	const double dx = x - cx;
	const double dy = y - cy;
	return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
}

double Gaussian::integral() const
{
	const double k = sigma * std::sqrt(2.0);
	auto axis = [&](double c) {
		return sigma * std::sqrt(std::numbers::pi / 2.0) * (std::erf((1.0 - c) / k) + std::erf(c / k));
	};
	return axis(cx) * axis(cy);
}

double gaussian_integrand(double x, double y)
{
	return Gaussian{}(x, y);
}

double gaussian_reference()
{
	return Gaussian{}.integral();
}

GaussianFamily random_gaussian_centres(std::uint64_t seed)
{
	return [seed](std::uint64_t trial) {
		Rng rng(derive_seed(seed, trial));
		const double cx = rng.uniform();
		return Gaussian{cx, rng.uniform(), 0.25};
	};
}

std::vector<ConvergenceRow> gaussian_convergence(const SamplerFactory& factory,
                                                 std::span<const std::size_t> n_values,
                                                 std::size_t trials, const GaussianFamily& integrand)
{
	if(trials == 0)
	{
		throw std::invalid_argument("gaussian_convergence: no trials");
	}
	std::vector<Gaussian> functions(trials);
	std::vector<double> references(trials);
	for(std::size_t t = 0; t < trials; ++t)
	{
		functions[t] = integrand ? integrand(t) : Gaussian{};
		references[t] = functions[t].integral();
	}
	std::vector<ConvergenceRow> rows;
	for(auto n : n_values)
	{
		check_power_of_two(n, "sample count");
		double sq = 0.0;
		for(std::size_t t = 0; t < trials; ++t)
		{
			const auto points = factory(n, t);
			double sum = 0.0;
			for(const auto& p : points)
			{
				sum += functions[t](p.x, p.y);
			}
			const double err = sum / static_cast<double>(points.size()) - references[t];
			sq += err * err;
		}
		rows.push_back({n, sq / static_cast<double>(trials)});
	}
	return rows;
}

double fit_loglog_slope(std::span<const ConvergenceRow> rows)
{
	if(rows.size() < 2)
	{
		throw std::invalid_argument("fit_loglog_slope: need at least two rows");
	}
	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	for(const auto& r : rows)
	{
		const double x = std::log2(static_cast<double>(r.n));
		const double y = std::log2(r.mse);
		sx += x;
		sy += y;
		sxx += x * x;
		sxy += x * y;
	}
	const double n = static_cast<double>(rows.size());
	return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows)
{
	out << "n,mse\n";
	const auto precision = out.precision(17);
	for(const auto& r : rows)
	{
		out << r.n << ',' << r.mse << '\n';
	}
	out.precision(precision);
}

} // namespace artowen
