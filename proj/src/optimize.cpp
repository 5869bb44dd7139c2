// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/optimize.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <thread>

namespace artowen
{

bool feasible(const Score& s, const Objective& objective)
{
	return s.conflict_radius >= objective.r_target;
}

bool better(const Score& a, const Score& b, const Objective& objective)
{
	switch(objective.kind)
	{
	case ObjectiveKind::ConflictRadius:
		return a.conflict_radius > b.conflict_radius;
	case ObjectiveKind::BlueNoiseEnergy:
		return a.energy < b.energy;
	case ObjectiveKind::Combined:
	{
		const bool fa = feasible(a, objective);
		const bool fb = feasible(b, objective);
		if(fa != fb)
		{
			return fa;
		}
		return a.energy < b.energy;
	}
	}
	return false;
}

Score evaluate(std::span<const Point2> points, const Objective& objective)
{
	Score s;
	if(objective.kind != ObjectiveKind::BlueNoiseEnergy)
	{
		s.conflict_radius = conflict_radius(points);
	}
	if(objective.kind != ObjectiveKind::ConflictRadius)
	{
		s.energy = blue_noise_energy(points, objective.sigma);
	}
	return s;
}

OptimizeResult greedy_optimize(const Grammar& grammar, std::vector<ScrambleData> initial,
                               const Objective& objective, std::size_t attempts_per_symbol,
                               Rng& rng, std::size_t n_points, Evaluator evaluator)
{
	if(!std::has_single_bit(n_points) || n_points > (std::size_t{1} << 16) || n_points < 2)
	{
		throw std::invalid_argument("greedy_optimize: n_points must be a power of two in [2, 2^16]");
	}
	if(initial.size() != 2)
	{
		throw std::invalid_argument("greedy_optimize: expects one data table per axis");
	}
	const int depth = initial[0].depth();

	if(!evaluator)
	{
		const auto matrices = default_matrices();
		std::vector<std::array<std::uint32_t, 2>> base(n_points);
		for(std::size_t i = 0; i < n_points; ++i)
		{
			base[i] = {matrices[0].apply(i), matrices[1].apply(i)};
		}
		evaluator = [base = std::move(base), objective](const ArtOwenScrambler& s) {
			std::vector<Point2> points(base.size());
			for(std::size_t i = 0; i < base.size(); ++i)
			{
				points[i] = {to_unit(s.scramble(base[i][0], 0)), to_unit(s.scramble(base[i][1], 1))};
			}
			return evaluate(points, objective);
		};
	}

	OptimizeResult result;
	result.data = std::move(initial);
	auto score_of = [&]() { return evaluator(ArtOwenScrambler(grammar, result.data, depth)); };
	result.score = score_of();
	result.accepted.push_back(result.score);

	for(;;)
	{
		++result.sweeps;
		std::size_t changes = 0;
		for(auto& table : result.data)
		{
			for(Symbol s = 0; s < grammar.size(); ++s)
			{
				for(std::size_t attempt = 0; attempt < attempts_per_symbol; ++attempt)
				{
					const std::uint32_t previous = table[s];
					table.set(s, rng.next_u32());
					const Score candidate = score_of();
					if(better(candidate, result.score, objective))
					{
						result.score = candidate;
						result.accepted.push_back(candidate);
						++changes;
					}
					else
					{
						table.set(s, previous);
					}
				}
			}
		}
		if(changes == 0)
		{
			break;
		}
	}
	return result;
}

// ---------------------------------------------------------------------------

namespace
{

constexpr int kScanBits = 8;
constexpr int kScanPoints = 256;

struct ScanBase
{
	std::array<std::uint8_t, kScanPoints> x;
	std::array<std::uint8_t, kScanPoints> y;

	ScanBase()
	{
		const auto matrices = default_matrices(kScanBits);
		for(int i = 0; i < kScanPoints; ++i)
		{
			x[i] = static_cast<std::uint8_t>(matrices[0].apply(i));
			y[i] = static_cast<std::uint8_t>(matrices[1].apply(i));
		}
	}
};

const ScanBase& scan_base()
{
	static const ScanBase base;
	return base;
}

/// Depth-8 scramble table for the two-symbol Thue-Morse grammar, where the
/// symbol at a node is the parity of the prefix above it.
std::array<std::uint8_t, 256> scan_permutation(std::uint8_t v0, std::uint8_t v1)
{
	std::array<std::uint8_t, 256> perm{};
	const std::uint32_t vec[2] = {std::uint32_t{v0}, std::uint32_t{v1}};
	for(std::uint32_t x = 0; x < 256; ++x)
	{
		std::uint32_t flips = 0;
		std::uint32_t symbol = 0;
		for(int level = 0; level < kScanBits; ++level)
		{
			flips ^= vec[symbol] >> level;
			symbol ^= (x >> (kScanBits - 1 - level)) & 1u;
		}
		perm[x] = static_cast<std::uint8_t>(x ^ flips);
	}
	return perm;
}

int wrap(int d)
{
	d = d < 0 ? -d : d;
	return d > 128 ? 256 - d : d;
}

struct CodeEvaluator
{
	Objective objective;
	std::array<double, 129> kernel{};
	double r_max;

	explicit CodeEvaluator(const Objective& o) : objective(o)
	{
		const double scale = kScanPoints / (2.0 * o.sigma * o.sigma);
		for(int d = 0; d <= 128; ++d)
		{
			const double u = d / 256.0;
			kernel[d] = std::exp(-u * u * scale);
		}
		r_max = std::sqrt(2.0 / (std::sqrt(3.0) * kScanPoints));
	}

	/// Column c holds the point (c, rows[c]) on the 256 x 256 lattice.
	std::array<std::uint8_t, 256> rows(std::uint32_t code) const
	{
		const auto& base = scan_base();
		const auto px = scan_permutation(static_cast<std::uint8_t>(code >> 24),
		                                 static_cast<std::uint8_t>(code >> 16));
		const auto py = scan_permutation(static_cast<std::uint8_t>(code >> 8),
		                                 static_cast<std::uint8_t>(code));
		std::array<std::uint8_t, 256> r{};
		for(int i = 0; i < kScanPoints; ++i)
		{
			r[px[base.x[i]]] = py[base.y[i]];
		}
		return r;
	}

	double radius(const std::array<std::uint8_t, 256>& r) const
	{
		int best = 1 << 30;
		for(int dx = 1; dx <= 128 && dx * dx < best; ++dx)
		{
			for(int c = 0; c < 256; ++c)
			{
				const int dy = wrap(int{r[c]} - int{r[(c + dx) & 255]});
				best = std::min(best, dx * dx + dy * dy);
			}
		}
		return std::sqrt(static_cast<double>(best)) / 256.0 / r_max;
	}

	double energy(const std::array<std::uint8_t, 256>& r) const
	{
		double e = 0.0;
		for(int dx = 1; dx < 256; ++dx)
		{
			const double kx = kernel[wrap(dx)];
			double row = 0.0;
			for(int c = 0; c < 256; ++c)
			{
				row += kernel[wrap(int{r[c]} - int{r[(c + dx) & 255]})];
			}
			e += kx * row;
		}
		return e;
	}
};

using ScanHeap = std::vector<ScanEntry>;

void scan_range(const CodeEvaluator& eval, std::uint64_t begin, std::uint64_t end,
                std::size_t top_k, ScanHeap& heap)
{
	const auto& objective = eval.objective;
	auto before = [&objective](const ScanEntry& a, const ScanEntry& b) {
		return scan_before(a, b, objective);
	};
	for(std::uint64_t c = begin; c < end; ++c)
	{
		const auto code = static_cast<std::uint32_t>(c);
		const auto rows = eval.rows(code);
		ScanEntry entry{code, {}};
		if(objective.kind != ObjectiveKind::BlueNoiseEnergy)
		{
			entry.score.conflict_radius = eval.radius(rows);
		}
		if(objective.kind != ObjectiveKind::ConflictRadius)
		{
			// An infeasible code cannot displace a full heap of feasible ones.
			const bool skip = objective.kind == ObjectiveKind::Combined && heap.size() == top_k &&
			                  !feasible(entry.score, objective) &&
			                  feasible(heap.front().score, objective);
			if(skip)
			{
				continue;
			}
			entry.score.energy = eval.energy(rows);
		}

		if(heap.size() < top_k)
		{
			heap.push_back(entry);
			std::push_heap(heap.begin(), heap.end(), before);
		}
		else if(top_k > 0 && before(entry, heap.front()))
		{
			std::pop_heap(heap.begin(), heap.end(), before);
			heap.back() = entry;
			std::push_heap(heap.begin(), heap.end(), before);
		}
	}
}

template <typename T>
void put(std::ostream& out, T value)
{
	unsigned char bytes[sizeof(T)];
	std::memcpy(bytes, &value, sizeof(T));
	if constexpr(std::endian::native == std::endian::big)
	{
		std::reverse(std::begin(bytes), std::end(bytes));
	}
	out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in)
{
	unsigned char bytes[sizeof(T)];
	if(!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
	{
		throw std::runtime_error("scan checkpoint truncated");
	}
	if constexpr(std::endian::native == std::endian::big)
	{
		std::reverse(std::begin(bytes), std::end(bytes));
	}
	T value;
	std::memcpy(&value, bytes, sizeof(T));
	return value;
}

constexpr char kMagic[8] = {'A', 'R', 'T', 'S', 'C', 'A', 'N', '1'};

} // namespace

ArtOwenScrambler scrambler_from_code(std::uint32_t code)
{
	auto table = [](std::uint32_t v0, std::uint32_t v1) {
		return ScrambleData({(v0 & 0xffu) << 24, (v1 & 0xffu) << 24}, kScanBits);
	};
	return ArtOwenScrambler(build_tm_grammar(1), {table(code >> 24, code >> 16), table(code >> 8, code)},
	                        kScanBits);
}

Score evaluate_code(std::uint32_t code, const Objective& objective)
{
	const CodeEvaluator eval(objective);
	const auto rows = eval.rows(code);
	Score s;
	if(objective.kind != ObjectiveKind::BlueNoiseEnergy)
	{
		s.conflict_radius = eval.radius(rows);
	}
	if(objective.kind != ObjectiveKind::ConflictRadius)
	{
		s.energy = eval.energy(rows);
	}
	return s;
}

bool scan_before(const ScanEntry& a, const ScanEntry& b, const Objective& objective)
{
	if(better(a.score, b.score, objective))
	{
		return true;
	}
	if(better(b.score, a.score, objective))
	{
		return false;
	}
	return a.code < b.code;
}

std::vector<ScanEntry> merge_top(std::vector<ScanEntry> a, std::span<const ScanEntry> b,
                                 const Objective& objective, std::size_t top_k)
{
	a.insert(a.end(), b.begin(), b.end());
	std::sort(a.begin(), a.end(),
	          [&objective](const ScanEntry& x, const ScanEntry& y) { return scan_before(x, y, objective); });
	if(a.size() > top_k)
	{
		a.resize(top_k);
	}
	return a;
}

std::vector<ScanEntry> exhaustive_scan(const Objective& objective, std::uint64_t begin,
                                       std::uint64_t end, const ScanOptions& options)
{
	constexpr std::uint64_t kLimit = std::uint64_t{1} << 32;
	if(begin > end || end > kLimit)
	{
		throw std::invalid_argument("exhaustive_scan: range must lie within [0, 2^32]");
	}
	const CodeEvaluator eval(objective);

	// Fixed blocks, each with its own heap; the merge order is block order.
	constexpr std::uint64_t kBlock = std::uint64_t{1} << 16;
	const std::uint64_t blocks = (end - begin + kBlock - 1) / kBlock;
	std::vector<ScanHeap> heaps(blocks);
	std::atomic<std::uint64_t> next{0};
	auto work = [&]() {
		for(std::uint64_t b = next++; b < blocks; b = next++)
		{
			const std::uint64_t lo = begin + b * kBlock;
			scan_range(eval, lo, std::min(end, lo + kBlock), options.top_k, heaps[b]);
		}
	};

	unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
	workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));
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

	std::vector<ScanEntry> top;
	for(const auto& heap : heaps)
	{
		top = merge_top(std::move(top), heap, objective, options.top_k);
	}
	return top;
}

void advance_scan(ScanCheckpoint& state, std::uint64_t budget, unsigned workers)
{
	const std::uint64_t stop = std::min(state.end, state.cursor + budget);
	if(stop <= state.cursor)
	{
		return;
	}
	const auto found = exhaustive_scan(state.objective, state.cursor, stop, {state.top_k, workers});
	state.top = merge_top(std::move(state.top), found, state.objective, state.top_k);
	state.cursor = stop;
}

void write_checkpoint(std::ostream& out, const ScanCheckpoint& state)
{
	out.write(kMagic, sizeof(kMagic));
	put<std::uint64_t>(out, state.begin);
	put<std::uint64_t>(out, state.end);
	put<std::uint64_t>(out, state.cursor);
	put<std::uint32_t>(out, static_cast<std::uint32_t>(state.objective.kind));
	put<double>(out, state.objective.r_target);
	put<double>(out, state.objective.sigma);
	put<std::uint64_t>(out, state.top_k);
	put<std::uint64_t>(out, state.top.size());
	for(const auto& e : state.top)
	{
		put<std::uint32_t>(out, e.code);
		put<double>(out, e.score.conflict_radius);
		put<double>(out, e.score.energy);
	}
}

ScanCheckpoint read_checkpoint(std::istream& in)
{
	char magic[sizeof(kMagic)];
	if(!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
	{
		throw std::runtime_error("not a scan checkpoint");
	}
	ScanCheckpoint state;
	state.begin = get<std::uint64_t>(in);
	state.end = get<std::uint64_t>(in);
	state.cursor = get<std::uint64_t>(in);
	const auto kind = get<std::uint32_t>(in);
	if(kind > 2)
	{
		throw std::runtime_error("scan checkpoint has an unknown objective");
	}
	state.objective.kind = static_cast<ObjectiveKind>(kind);
	state.objective.r_target = get<double>(in);
	state.objective.sigma = get<double>(in);
	state.top_k = get<std::uint64_t>(in);
	const auto count = get<std::uint64_t>(in);
	if(state.begin > state.end || state.end > (std::uint64_t{1} << 32) || state.cursor < state.begin ||
	   state.cursor > state.end || count > state.top_k)
	{
		throw std::runtime_error("scan checkpoint is inconsistent");
	}
	state.top.resize(count);
	for(auto& e : state.top)
	{
		e.code = get<std::uint32_t>(in);
		e.score.conflict_radius = get<double>(in);
		e.score.energy = get<double>(in);
	}
	return state;
}

} // namespace artowen
