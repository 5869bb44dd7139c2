// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#pragma once

#include <artowen/analysis.h>
#include <artowen/grammar.h>
#include <artowen/rng.h>
#include <artowen/scrambler.h>

#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

namespace artowen
{

enum class ObjectiveKind : std::uint32_t
{
	/// Maximise the conflict radius.
	ConflictRadius = 0,
	/// Minimise the blue-noise energy.
	BlueNoiseEnergy = 1,
	/// Sets reaching r_target rank above sets that do not; then lower energy.
	Combined = 2,
};

struct Objective
{
	ObjectiveKind kind = ObjectiveKind::Combined;
	double r_target = 0.2;
	double sigma = 0.5;
};

struct Score
{
	double conflict_radius = 0.0;
	double energy = 0.0;
};

bool feasible(const Score& s, const Objective& objective);

/// Strict "a ranks above b" under the objective.
bool better(const Score& a, const Score& b, const Objective& objective);

/// Scores a point set; energy is only computed when the objective uses it.
Score evaluate(std::span<const Point2> points, const Objective& objective);

/// Scores the data tables of a scrambler. The default scrambles the first
/// n_points of the 2D Sobol sequence and calls evaluate().
using Evaluator = std::function<Score(const ArtOwenScrambler&)>;

struct OptimizeResult
{
	/// One table per axis.
	std::vector<ScrambleData> data;
	Score score;
	/// Initial score followed by the score after every accepted change.
	std::vector<Score> accepted;
	std::size_t sweeps = 0;
};

/// Greedy descent over whole data vectors. Each sweep visits every (axis,
/// symbol) pair and tries attempts_per_symbol random replacement vectors,
/// keeping a candidate only when it ranks strictly above the current tables.
/// Stops after a sweep with no accepted change. Throws std::invalid_argument
/// unless n_points is a power of two <= 2^16 and initial holds two tables.
OptimizeResult greedy_optimize(const Grammar& grammar, std::vector<ScrambleData> initial,
                               const Objective& objective, std::size_t attempts_per_symbol,
                               Rng& rng, std::size_t n_points = 256, Evaluator evaluator = {});

// ---------------------------------------------------------------------------
// Exhaustive scan over 32-bit codes for the two-symbol Thue-Morse grammar at
// depth 8. Code bytes, most significant first: axis 0 symbol 0, axis 0
// symbol 1, axis 1 symbol 0, axis 1 symbol 1.

ArtOwenScrambler scrambler_from_code(std::uint32_t code);

/// Scores the first 256 2D Sobol points scrambled by `code`.
Score evaluate_code(std::uint32_t code, const Objective& objective);

struct ScanEntry
{
	std::uint32_t code;
	Score score;
};

/// Total order used by the scan: objective rank, then lower code first.
bool scan_before(const ScanEntry& a, const ScanEntry& b, const Objective& objective);

struct ScanOptions
{
	std::size_t top_k = 1000;
	/// 0 = hardware concurrency. Results do not depend on this.
	unsigned workers = 0;
};

/// Evaluates every code in [begin, end) (end <= 2^32) and returns the best
/// top_k, best first.
std::vector<ScanEntry> exhaustive_scan(const Objective& objective, std::uint64_t begin,
                                       std::uint64_t end, const ScanOptions& options = {});

/// Merges two best-first lists and keeps the top_k.
std::vector<ScanEntry> merge_top(std::vector<ScanEntry> a, std::span<const ScanEntry> b,
                                 const Objective& objective, std::size_t top_k);

/// Resumable scan state. `cursor` is the next code to evaluate.
struct ScanCheckpoint
{
	std::uint64_t begin = 0;
	std::uint64_t end = 0;
	std::uint64_t cursor = 0;
	Objective objective;
	std::size_t top_k = 1000;
	std::vector<ScanEntry> top;
};

/// Scans up to `budget` further codes and advances the cursor.
void advance_scan(ScanCheckpoint& state, std::uint64_t budget, unsigned workers = 0);

/// Little-endian binary record; see README for the layout.
void write_checkpoint(std::ostream& out, const ScanCheckpoint& state);
/// Throws std::runtime_error on a malformed record.
ScanCheckpoint read_checkpoint(std::istream& in);

} // namespace artowen
