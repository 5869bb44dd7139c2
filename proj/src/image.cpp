// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/image.h>

#include <algorithm>
#include <cmath>

namespace artowen
{

void write_pgm(std::ostream& out, const Image& image, double lo, double hi)
{
	out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
	const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
	std::vector<unsigned char> bytes(image.pixels.size());
	for(std::size_t i = 0; i < bytes.size(); ++i)
	{
		const double v = std::clamp((image.pixels[i] - lo) * scale, 0.0, 255.0);
		bytes[i] = static_cast<unsigned char>(std::lround(v));
	}
	out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_pgm(std::ostream& out, const Image& image)
{
	if(image.pixels.empty())
	{
		write_pgm(out, image, 0.0, 1.0);
		return;
	}
	const auto [lo, hi] = std::minmax_element(image.pixels.begin(), image.pixels.end());
	write_pgm(out, image, *lo, *hi);
}

} // namespace artowen
