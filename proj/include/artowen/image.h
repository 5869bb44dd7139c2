// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

namespace artowen
{

/// Row-major grayscale image of doubles.
struct Image
{
	std::size_t width = 0;
	std::size_t height = 0;
	std::vector<double> pixels;

	Image() = default;
	Image(std::size_t w, std::size_t h, double value = 0.0) : width(w), height(h), pixels(w * h, value) {}

	double& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
	double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

	bool operator==(const Image&) const = default;
};

/// Binary 8-bit PGM; values are mapped linearly from [lo, hi] and clamped.
void write_pgm(std::ostream& out, const Image& image, double lo, double hi);

/// As above with lo/hi taken from the image's own range.
void write_pgm(std::ostream& out, const Image& image);

} // namespace artowen
