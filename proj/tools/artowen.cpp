// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/analysis.h>
#include <artowen/gf2map.h>
#include <artowen/optimize.h>
#include <artowen/scrambler.h>

#include <CLI11.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace
{

using namespace artowen;

// Seed streams. Every derived seed is derive_seed(master, stream, index).
constexpr std::uint64_t kGrammarStream = 0x6772616d;
constexpr std::uint64_t kRealizationStream = 0x7265616c;
constexpr std::uint64_t kCodeStream = 0x636f6465;
constexpr std::uint64_t kTreeStream = 0x74726565;
constexpr std::uint64_t kOptimizeStream = 0x6f707469;
constexpr std::uint64_t kIntegrandStream = 0x696e7467;

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error
{
	using std::runtime_error::runtime_error;
};

struct Config
{
	std::uint64_t seed = 0;
	std::string grammar = "tm";
	std::size_t window = 6;
	std::size_t symbols = 16;
	std::string grammar_file;
	bool unconstrained = false;
	int depth = 32;
	std::size_t dims = 2;
	std::size_t n = 256;
	std::string out = "-";
	std::string format;
	bool strict = false;
	std::string scramble = "art";
	std::string data_file;
	std::string directions;
	unsigned workers = 0;

	// spectrum / zoneplate / converge
	std::size_t realizations = 1000;
	int resolution = 128;
	std::uint32_t spp = 4;
	std::string sampler = "art";
	int min_log2 = 4;
	int max_log2 = 14;
	std::size_t trials = 64;
	bool centred = false;

	// grammar solve
	std::string tree;
	int tree_depth = 4;
	std::string grammar_action;
	std::string input = "-";

	// optimize / scan
	std::string objective = "combined";
	double r_target = 0.2;
	double sigma = 0.5;
	std::size_t attempts = 1000;
	std::uint64_t begin = 0;
	std::uint64_t end = std::uint64_t{1} << 32;
	std::size_t top_k = 1000;
	std::string checkpoint;

	// enumerate
	std::uint32_t px = 0;
	std::uint32_t py = 0;
	int grid_log2 = 4;
};

// Output sink: a file, or stdout for "-".
class Output
{
  public:
	explicit Output(const std::string& path, bool binary = false)
	{
		if(path != "-")
		{
			file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
			if(!*file_)
			{
				throw std::runtime_error("cannot write " + path);
			}
		}
	}
	std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
	std::unique_ptr<std::ofstream> file_;
};

std::string read_input(const std::string& path)
{
	std::ostringstream text;
	if(path == "-")
	{
		text << std::cin.rdbuf();
	}
	else
	{
		std::ifstream in(path);
		if(!in)
		{
			throw UsageError("cannot read " + path);
		}
		text << in.rdbuf();
	}
	return text.str();
}

Grammar make_grammar(const Config& c)
{
	if(!c.grammar_file.empty())
	{
		std::istringstream in(read_input(c.grammar_file));
		return read_grammar(in);
	}
	Rng rng(derive_seed(c.seed, kGrammarStream));
	if(c.grammar == "tm")
	{
		return build_tm_grammar(c.window);
	}
	if(c.grammar == "ordered")
	{
		return build_ordered_grammar(c.symbols, rng, !c.unconstrained);
	}
	return build_random_grammar(c.symbols, rng, !c.unconstrained);
}

// Random tables from the seed, or tables read from --data (one per dimension).
ArtOwenScrambler make_scrambler(const Config& c, const Grammar& g, std::size_t dims, std::uint64_t seed)
{
	if(c.data_file.empty())
	{
		return ArtOwenScrambler::random(g, dims, c.depth, seed);
	}
	std::istringstream in(read_input(c.data_file));
	std::vector<ScrambleData> tables;
	for(std::size_t d = 0; d < dims; ++d)
	{
		tables.push_back(read_scramble_data(in));
	}
	return ArtOwenScrambler(g, std::move(tables), c.depth);
}

std::vector<GeneratorMatrix> make_matrices(const Config& c, std::size_t dims)
{
	if(dims <= 2 && c.directions.empty())
	{
		auto m = default_matrices();
		m.erase(m.begin() + static_cast<std::ptrdiff_t>(dims), m.end());
		return m;
	}
	const std::string path = c.directions.empty() ? ARTOWEN_DEFAULT_DIRECTIONS : c.directions;
	std::ifstream in(path);
	if(!in)
	{
		throw UsageError("cannot read direction numbers from " + path);
	}
	return load_direction_numbers(in, dims);
}

Objective make_objective(const Config& c)
{
	Objective o;
	o.kind = c.objective == "radius" ? ObjectiveKind::ConflictRadius
	         : c.objective == "energy" ? ObjectiveKind::BlueNoiseEnergy
	                                   : ObjectiveKind::Combined;
	o.r_target = c.r_target;
	o.sigma = c.sigma;
	return o;
}

// Point family for spectrum and converge: `kind` scrambling of the first n
// Sobol points, or independent uniform points, for realization r.
std::vector<Point2> sampler_points(const Config& c, const std::string& kind, const Grammar& g, std::size_t n,
                                   std::uint64_t r)
{
	const std::uint64_t seed = derive_seed(c.seed, kRealizationStream, r);
	if(kind == "uniform")
	{
		Rng rng(seed);
		std::vector<Point2> pts(n);
		for(auto& p : pts)
		{
			const double x = rng.uniform();
			p = {x, rng.uniform()};
		}
		return pts;
	}
	if(kind == "art")
	{
		const auto s = ArtOwenScrambler::random(g, 2, c.depth, seed);
		return sobol_points_2d(n, &s);
	}
	auto pts = sobol_points_2d(n);
	if(kind == "none")
	{
		return pts;
	}
	const auto m = default_matrices();
	const auto cx = static_cast<std::uint32_t>(derive_seed(seed, 0));
	const auto cy = static_cast<std::uint32_t>(derive_seed(seed, 1));
	for(std::size_t i = 0; i < n; ++i)
	{
		const auto x = m[0].apply(i), y = m[1].apply(i);
		pts[i] = kind == "xor" ? Point2{to_unit(xor_scramble(x, cx)), to_unit(xor_scramble(y, cy))}
		                       : Point2{to_unit(burley_hash_scramble(x, cx)), to_unit(burley_hash_scramble(y, cy))};
	}
	return pts;
}

// ---------------------------------------------------------------------------

int cmd_points(const Config& c)
{
	if(c.n == 0)
	{
		throw UsageError("--n must be positive");
	}
	const auto matrices = make_matrices(c, c.dims);
	const auto g = make_grammar(c);
	std::optional<ArtOwenScrambler> art;
	if(c.scramble == "art")
	{
		art = make_scrambler(c, g, c.dims, c.seed);
	}
	const std::string format = c.format.empty() ? "txt" : c.format;
	if(format != "txt" && format != "csv" && format != "bin")
	{
		throw UsageError("points: --format must be txt, csv or bin");
	}
	Output out(c.out, format == "bin");
	auto& os = out.stream();
	if(format == "csv")
	{
		for(std::size_t d = 0; d < c.dims; ++d)
		{
			os << (d ? "," : "") << 'x' << d;
		}
		os << '\n';
	}

	char buffer[32];
	for(std::size_t i = 0; i < c.n; ++i)
	{
		auto p = sobol_point(i, matrices);
		for(std::size_t d = 0; d < c.dims; ++d)
		{
			auto& v = p.coords[d];
			const auto dim_seed = static_cast<std::uint32_t>(derive_seed(c.seed, kCodeStream, d));
			if(art)
			{
				v = art->scramble(v, d);
			}
			else if(c.scramble == "xor")
			{
				v = xor_scramble(v, dim_seed);
			}
			else if(c.scramble == "burley")
			{
				v = burley_hash_scramble(v, dim_seed);
			}
			const double u = to_unit(v);
			if(format == "bin")
			{
				const auto bits = std::bit_cast<std::uint64_t>(u);
				unsigned char bytes[8];
				for(int b = 0; b < 8; ++b)
				{
					bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
				}
				os.write(reinterpret_cast<const char*>(bytes), 8);
			}
			else
			{
				std::snprintf(buffer, sizeof(buffer), "%.17g", u);
				os << (d ? (format == "csv" ? "," : " ") : "") << buffer;
			}
		}
		if(format != "bin")
		{
			os << '\n';
		}
	}
	return kOk;
}

int cmd_grammar(const Config& c)
{
	if(c.grammar_action == "build")
	{
		Output out(c.out);
		write_grammar(out.stream(), make_grammar(c));
		return kOk;
	}
	if(c.grammar_action == "validate")
	{
		std::istringstream in(read_input(c.input));
		const auto report = validate_grammar(read_grammar(in));
		Output out(c.out);
		out.stream() << report;
		return c.strict && !report.clean() ? kFailed : kOk;
	}
	if(c.grammar_action == "map")
	{
		const auto system = build_bit_map(make_grammar(c), c.depth);
		const std::string format = c.format.empty() ? "pgm" : c.format;
		Output out(c.out, format == "pgm");
		if(format == "pgm")
		{
			write_bit_map_pgm(out.stream(), system);
		}
		else if(format == "csv")
		{
			const auto report = utilization_report(system);
			out.stream() << "significance,symbol,dots\n";
			for(int j = 0; j < system.depth; ++j)
			{
				for(Symbol s = 0; s < system.n_symbols; ++s)
				{
					out.stream() << j << ',' << s << ',' << report.column_counts[system.col_of(j, s)] << '\n';
				}
			}
		}
		else
		{
			throw UsageError("grammar map: --format must be pgm or csv");
		}
		return kOk;
	}

	// solve
	const auto g = make_grammar(c);
	Rng rng(derive_seed(c.seed, kTreeStream));
	const auto target = c.tree.empty() ? ExplicitTree::random(c.tree_depth, rng) : ExplicitTree::parse(c.tree);
	const auto result = solve_for_tree(g, target);
	std::cerr << "target " << target.to_string() << "\nrank " << result.rank << '\n';
	if(!result.data)
	{
		std::cerr << "infeasible: equation of node (level " << result.inconsistent->level << ", prefix "
		          << result.inconsistent->prefix << ") reduces to 0 = 1\n";
		return kFailed;
	}
	const ArtOwenScrambler check(g, {*result.data}, target.depth());
	if(!(expand_to_tree(check, 0, target.depth()) == target))
	{
		std::cerr << "solution does not reproduce the target\n";
		return kFailed;
	}
	std::cerr << "verified: solution reproduces the target tree\n";
	Output out(c.out);
	write_scramble_data(out.stream(), *result.data);
	return kOk;
}

int cmd_spectrum(const Config& c)
{
	const auto g = make_grammar(c);
	const auto spectrum = average_periodogram(
	    [&](std::uint64_t r) { return sampler_points(c, c.sampler, g, c.n, r); }, c.realizations, c.resolution,
	    c.workers);
	const std::string format = c.format.empty() ? "csv" : c.format;
	Output out(c.out, format == "pgm");
	if(format == "csv")
	{
		write_profile_csv(out.stream(), radial_average(spectrum));
	}
	else if(format == "pgm")
	{
		write_pgm(out.stream(), spectrum_image(spectrum));
	}
	else
	{
		throw UsageError("spectrum: --format must be csv or pgm");
	}
	return kOk;
}

int cmd_zoneplate(const Config& c)
{
	const auto g = make_grammar(c);
	const auto m = default_matrices();
	const Config none = [&] {
		Config z = c;
		z.depth = 0;
		z.data_file.clear();
		return z;
	}();
	const auto s = c.sampler == "none" ? make_scrambler(none, g, 2, c.seed) : make_scrambler(c, g, 2, c.seed);
	const auto image = zoneplate(s, m, c.resolution, c.spp);
	const auto reference = zoneplate_reference(c.resolution);
	std::cerr << "ring artifact metric " << ring_artifact_metric(image, reference) << '\n';
	Output out(c.out, true);
	write_pgm(out.stream(), image, 0.0, 1.0);
	return kOk;
}

int cmd_converge(const Config& c)
{
	if(c.min_log2 < 0 || c.max_log2 > 24 || c.min_log2 >= c.max_log2)
	{
		throw UsageError("converge: need 0 <= --min-log2 < --max-log2 <= 24");
	}
	const auto g = make_grammar(c);
	std::vector<std::size_t> ns;
	for(int e = c.min_log2; e <= c.max_log2; ++e)
	{
		ns.push_back(std::size_t{1} << e);
	}
	const GaussianFamily family = c.centred ? GaussianFamily{} : random_gaussian_centres(derive_seed(c.seed, kIntegrandStream));
	const auto rows = gaussian_convergence(
	    [&](std::size_t n, std::uint64_t trial) { return sampler_points(c, c.sampler, g, n, trial * 64 + std::bit_width(n)); },
	    ns, c.trials, family);
	Output out(c.out);
	write_convergence_csv(out.stream(), rows);
	std::fprintf(stderr, "slope %.4f\n", fit_loglog_slope(rows));
	return kOk;
}

int cmd_optimize(const Config& c)
{
	const auto g = make_grammar(c);
	const auto objective = make_objective(c);
	Rng rng(derive_seed(c.seed, kOptimizeStream));
	std::vector<ScrambleData> initial;
	if(c.data_file.empty())
	{
		initial = {ScrambleData::random(g.size(), c.depth, rng), ScrambleData::random(g.size(), c.depth, rng)};
	}
	else
	{
		initial = make_scrambler(c, g, 2, c.seed).data();
	}
	const auto result = greedy_optimize(g, std::move(initial), objective, c.attempts, rng, c.n);
	std::fprintf(stderr, "initial r_f %.6f energy %.6f\nfinal   r_f %.6f energy %.6f\n%zu accepted changes, %zu sweeps\n",
	             result.accepted.front().conflict_radius, result.accepted.front().energy, result.score.conflict_radius,
	             result.score.energy, result.accepted.size() - 1, result.sweeps);
	Output out(c.out);
	for(const auto& table : result.data)
	{
		write_scramble_data(out.stream(), table);
	}
	return objective.kind == ObjectiveKind::Combined && !feasible(result.score, objective) ? kFailed : kOk;
}

int cmd_scan(const Config& c)
{
	constexpr std::uint64_t kProgress = std::uint64_t{1} << 24;
	ScanCheckpoint state;
	bool resumed = false;
	if(!c.checkpoint.empty())
	{
		std::ifstream in(c.checkpoint, std::ios::binary);
		if(in)
		{
			state = read_checkpoint(in);
			resumed = true;
			std::fprintf(stderr, "resuming at code %llu\n", static_cast<unsigned long long>(state.cursor));
		}
	}
	if(!resumed)
	{
		if(c.begin > c.end || c.end > (std::uint64_t{1} << 32))
		{
			throw UsageError("scan: need --begin <= --end <= 2^32");
		}
		state = ScanCheckpoint{c.begin, c.end, c.begin, make_objective(c), c.top_k, {}};
	}

	while(state.cursor < state.end)
	{
		// Chunks end on multiples of 2^24 so progress lines are stable.
		const std::uint64_t next = std::min(state.end, (state.cursor / kProgress + 1) * kProgress);
		advance_scan(state, next - state.cursor, c.workers);
		if(!c.checkpoint.empty())
		{
			const std::string tmp = c.checkpoint + ".tmp";
			{
				std::ofstream cp(tmp, std::ios::binary);
				write_checkpoint(cp, state);
			}
			std::rename(tmp.c_str(), c.checkpoint.c_str());
		}
		if(state.cursor % kProgress == 0 || state.cursor == state.end)
		{
			const double done = static_cast<double>(state.cursor - state.begin) /
			                    static_cast<double>(std::max<std::uint64_t>(1, state.end - state.begin));
			std::fprintf(stderr, "scanned %llu / %llu codes (%.1f%%), best r_f %.4f\n",
			             static_cast<unsigned long long>(state.cursor - state.begin),
			             static_cast<unsigned long long>(state.end - state.begin), 100.0 * done,
			             state.top.empty() ? 0.0 : state.top.front().score.conflict_radius);
		}
	}

	Output out(c.out);
	auto& os = out.stream();
	os << "code,conflict_radius,energy\n";
	char line[96];
	for(const auto& e : state.top)
	{
		std::snprintf(line, sizeof(line), "0x%08x,%.17g,%.17g\n", e.code, e.score.conflict_radius, e.score.energy);
		os << line;
	}
	return state.objective.kind == ObjectiveKind::Combined &&
	               (state.top.empty() || !feasible(state.top.front().score, state.objective))
	           ? kFailed
	           : kOk;
}

int cmd_enumerate(const Config& c)
{
	const auto g = make_grammar(c);
	const auto m = default_matrices();
	const auto s = make_scrambler(c, g, 2, c.seed);
	Output out(c.out);
	for(auto i : enumerate_pixel_samples(s, m, c.px, c.py, c.grid_log2, c.n))
	{
		out.stream() << i << '\n';
	}
	return kOk;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* app, Config& c)
{
	app->add_option("--seed", c.seed, "Master seed");
	app->add_option("--grammar", c.grammar, "Grammar kind")->check(CLI::IsMember({"tm", "ordered", "random"}));
	app->add_option("--window", c.window, "Thue-Morse window length L")->check(CLI::Range(1, 4096));
	app->add_option("--symbols", c.symbols, "Alphabet size for ordered and random grammars")->check(CLI::Range(1, 1 << 24));
	app->add_option("--grammar-file", c.grammar_file, "Read the grammar from a file ('-' for stdin)");
	app->add_flag("--unconstrained", c.unconstrained, "Allow twin rules and unproduced symbols");
	app->add_option("--depth", c.depth, "Scrambling depth")->check(CLI::Range(0, 32));
	app->add_option("--out", c.out, "Output path ('-' for stdout)");
	app->add_option("--workers", c.workers, "Worker threads (0 = all cores); results do not depend on it");
}

void add_scrambler(CLI::App* app, Config& c)
{
	app->add_option("--data", c.data_file, "Read scrambling tables, one per dimension, instead of drawing them");
}

} // namespace

int main(int argc, char** argv)
{
	Config c;
	CLI::App app{"ART-Owen scrambled Sobol sampling toolkit"};
	app.require_subcommand(1);
	app.set_config("--config", "", "Read options from a TOML/INI file");

	auto* points = app.add_subcommand("points", "Generate (scrambled) Sobol points");
	add_common(points, c);
	add_scrambler(points, c);
	points->add_option("--n", c.n, "Number of points");
	points->add_option("--dims", c.dims, "Dimensions")->check(CLI::Range(1, 1 << 16));
	points->add_option("--scramble", c.scramble, "Scrambling")->check(CLI::IsMember({"none", "art", "xor", "burley"}));
	points->add_option("--format", c.format, "txt, csv or bin (little-endian doubles)")->check(CLI::IsMember({"txt", "csv", "bin"}));
	points->add_option("--direction-numbers", c.directions, "Joe-Kuo direction-number file for dims > 2");

	auto* grammar = app.add_subcommand("grammar", "Build, validate or solve grammars");
	grammar->require_subcommand(1);
	auto* build = grammar->add_subcommand("build", "Write a grammar");
	add_common(build, c);
	build->add_option("kind", c.grammar, "Grammar kind (same as --grammar)")->check(CLI::IsMember({"tm", "ordered", "random"}));
	auto* validate = grammar->add_subcommand("validate", "Report twin rules, unreachable and unproduced symbols");
	validate->add_option("input", c.input, "Grammar file ('-' for stdin)");
	validate->add_option("--out", c.out, "Output path ('-' for stdout)");
	validate->add_flag("--strict", c.strict, "Exit with status 1 when the report is not clean");
	auto* solve = grammar->add_subcommand("solve", "Solve for data reproducing a scrambling tree");
	add_common(solve, c);
	solve->add_option("--tree", c.tree, "Target tree, e.g. 1,01,1101 (default: random)");
	solve->add_option("--tree-depth", c.tree_depth, "Depth of the random target tree")->check(CLI::Range(1, 16));
	auto* map = grammar->add_subcommand("map", "Write the GF(2) bit map of a grammar");
	add_common(map, c);
	map->add_option("--format", c.format, "pgm or csv (dots per column)")->check(CLI::IsMember({"pgm", "csv"}));
	for(auto* sub : {build, validate, solve, map})
	{
		sub->callback([&c, sub] { c.grammar_action = sub->get_name(); });
	}

	auto* spectrum = app.add_subcommand("spectrum", "Average periodogram of scrambled point sets");
	add_common(spectrum, c);
	spectrum->add_option("--n", c.n, "Points per realization");
	spectrum->add_option("--realizations", c.realizations, "Number of realizations")->check(CLI::PositiveNumber);
	spectrum->add_option("--resolution", c.resolution, "Frequency grid size (even)");
	spectrum->add_option("--scramble", c.sampler, "Point family")->check(CLI::IsMember({"none", "art", "xor", "burley", "uniform"}));
	spectrum->add_option("--format", c.format, "csv (radial profile) or pgm (spectrum image)")->check(CLI::IsMember({"csv", "pgm"}));

	auto* zone = app.add_subcommand("zoneplate", "Render the zoneplate with the global sampler");
	add_common(zone, c);
	add_scrambler(zone, c);
	zone->add_option("--resolution", c.resolution, "Image size (power of two)");
	zone->add_option("--spp", c.spp, "Samples per pixel (power of two)");
	zone->add_option("--scramble", c.sampler, "art or none")->check(CLI::IsMember({"none", "art"}));
	zone->add_option("--format", c.format, "pgm")->check(CLI::IsMember({"pgm"}));

	auto* converge = app.add_subcommand("converge", "Gaussian integration error versus sample count");
	add_common(converge, c);
	converge->add_option("--scramble", c.sampler, "Point family")->check(CLI::IsMember({"none", "art", "xor", "burley", "uniform"}));
	converge->add_option("--min-log2", c.min_log2, "Smallest n = 2^k");
	converge->add_option("--max-log2", c.max_log2, "Largest n = 2^k");
	converge->add_option("--trials", c.trials, "Trials per n")->check(CLI::PositiveNumber);
	converge->add_flag("--centred", c.centred, "Use the Gaussian centred at (1/2, 1/2) in every trial");
	converge->add_option("--format", c.format, "csv")->check(CLI::IsMember({"csv"}));

	auto add_objective = [&c](CLI::App* sub) {
		sub->add_option("--objective", c.objective, "radius, energy or combined")->check(CLI::IsMember({"radius", "energy", "combined"}));
		sub->add_option("--r-target", c.r_target, "Conflict-radius target of the combined objective");
		sub->add_option("--sigma", c.sigma, "Blue-noise energy scale")->check(CLI::PositiveNumber);
	};

	auto* optimize = app.add_subcommand("optimize", "Greedy optimization of scrambling tables");
	add_common(optimize, c);
	add_scrambler(optimize, c);
	add_objective(optimize);
	optimize->add_option("--n", c.n, "Points in the evaluated set (power of two)");
	optimize->add_option("--attempts", c.attempts, "Random vectors tried per symbol and sweep");

	auto* scan = app.add_subcommand("scan", "Exhaustive scan of 32-bit codes (two-symbol grammar, depth 8)");
	scan->add_option("--seed", c.seed, "Unused; accepted for uniformity");
	add_objective(scan);
	scan->add_option("--begin", c.begin, "First code");
	scan->add_option("--end", c.end, "One past the last code (at most 2^32)");
	scan->add_option("--top-k", c.top_k, "Entries kept")->check(CLI::PositiveNumber);
	scan->add_option("--checkpoint", c.checkpoint, "Resumable state file, written every 2^24 codes");
	scan->add_option("--out", c.out, "CSV output path ('-' for stdout)");
	scan->add_option("--workers", c.workers, "Worker threads (0 = all cores)");

	auto* enumerate = app.add_subcommand("enumerate", "List the global sample indices falling in one pixel");
	add_common(enumerate, c);
	add_scrambler(enumerate, c);
	enumerate->add_option("--px", c.px, "Pixel column")->required();
	enumerate->add_option("--py", c.py, "Pixel row")->required();
	enumerate->add_option("--k", c.grid_log2, "Grid of 2^k x 2^k pixels")->check(CLI::Range(0, 16));
	enumerate->add_option("--n", c.n, "Number of global samples");

	try
	{
		app.parse(argc, argv);
	}
	catch(const CLI::ParseError& e)
	{
		const int code = app.exit(e);
		return code == 0 ? kOk : kUsage;
	}

	try
	{
		if(*points)
		{
			return cmd_points(c);
		}
		if(*grammar)
		{
			return cmd_grammar(c);
		}
		if(*spectrum)
		{
			return cmd_spectrum(c);
		}
		if(*zone)
		{
			return cmd_zoneplate(c);
		}
		if(*converge)
		{
			return cmd_converge(c);
		}
		if(*optimize)
		{
			return cmd_optimize(c);
		}
		if(*scan)
		{
			return cmd_scan(c);
		}
		return cmd_enumerate(c);
	}
	catch(const UsageError& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return kUsage;
	}
	catch(const ParseError& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return kUsage;
	}
	catch(const std::invalid_argument& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return kUsage;
	}
	catch(const std::exception& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return kFailed;
	}
}
