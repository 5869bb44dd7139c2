// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#include <artowen/grammar.h>
#include <artowen/sobol.h>

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace artowen
{

Grammar::Grammar(std::vector<Production> productions, Symbol start)
    : productions_(std::move(productions)), start_(start)
{
	if(productions_.empty())
	{
		throw std::invalid_argument("grammar needs at least one symbol");
	}
	const auto n = productions_.size();
	if(start_ >= n)
	{
		throw std::invalid_argument("start symbol outside the alphabet");
	}
	for(const auto& p : productions_)
	{
		if(p.left >= n || p.right >= n)
		{
			throw std::invalid_argument("production entry outside the alphabet");
		}
	}
}

std::string thue_morse_word(std::size_t length)
{
	std::string word(length, '0');
	for(std::size_t i = 0; i < length; ++i)
	{
		word[i] = (std::popcount(i) & 1) ? '1' : '0';
	}
	return word;
}

std::vector<std::string> thue_morse_factors(std::size_t window)
{
	if(window == 0)
	{
		throw std::invalid_argument("window length must be positive");
	}

	auto collect = [window](std::size_t prefix) {
		const auto word = thue_morse_word(prefix);
		std::vector<std::string> factors;
		std::map<std::string, bool> seen;
		for(std::size_t i = 0; i + window <= word.size(); ++i)
		{
			auto f = word.substr(i, window);
			if(seen.emplace(f, true).second)
			{
				factors.push_back(std::move(f));
			}
		}
		return factors;
	};

	// Double the prefix until the factor count is stable across a doubling.
	std::size_t prefix = std::max<std::size_t>(4096, 64 * window);
	auto factors = collect(prefix);
	for(;;)
	{
		prefix *= 2;
		auto next = collect(prefix);
		if(next.size() == factors.size())
		{
			return next;
		}
		factors = std::move(next);
	}
}

Grammar build_tm_grammar(std::size_t window)
{
	const auto factors = thue_morse_factors(window);
	std::map<std::string, Symbol> index;
	for(std::size_t i = 0; i < factors.size(); ++i)
	{
		index.emplace(factors[i], static_cast<Symbol>(i));
	}

	std::vector<Production> productions;
	productions.reserve(factors.size());
	for(const auto& w : factors)
	{
		std::string image;
		image.reserve(2 * w.size());
		for(char c : w)
		{
			image += (c == '0') ? "01" : "10";
		}
		const auto left = index.find(image.substr(0, window));
		const auto right = index.find(image.substr(1, window));
		if(left == index.end() || right == index.end())
		{
			throw std::logic_error("Thue-Morse factor set not closed under substitution");
		}
		productions.push_back({left->second, right->second});
	}
	return Grammar(std::move(productions), 0);
}

Grammar build_ordered_grammar(std::size_t n_symbols, Rng& rng, bool constrained)
{
	if(n_symbols == 0)
	{
		throw std::invalid_argument("grammar needs at least one symbol");
	}
	const auto n = n_symbols;

	// Entry 2k (left) and 2k+1 (right) of symbol k; forced entries are fixed by
	// the breadth-first layout, the rest are open.
	std::vector<Symbol> entries(2 * n, 0);
	std::vector<bool> open(2 * n, true);
	for(std::size_t k = 0; k < n; ++k)
	{
		for(std::size_t side = 0; side < 2; ++side)
		{
			const auto child = 2 * k + 1 + side;
			if(child < n)
			{
				entries[2 * k + side] = static_cast<Symbol>(child);
				open[2 * k + side] = false;
			}
		}
	}

	auto draw = [&](std::size_t entry) {
		const auto sibling = entry ^ 1u;
		for(;;)
		{
			const auto s = static_cast<Symbol>(rng.below(n));
			const bool sibling_fixed = sibling < entry || !open[sibling];
			if(!constrained || n == 1 || !sibling_fixed || s != entries[sibling])
			{
				return s;
			}
		}
	};
	for(std::size_t e = 0; e < 2 * n; ++e)
	{
		if(open[e])
		{
			entries[e] = draw(e);
		}
	}

	if(constrained && n >= 2)
	{
		// Every symbol but the root is produced by the layout; give the root a
		// parent unless the draws already did.
		const bool produced = std::find(entries.begin(), entries.end(), Symbol{0}) != entries.end();
		if(!produced)
		{
			std::vector<std::size_t> candidates;
			for(std::size_t e = 0; e < 2 * n; ++e)
			{
				if(open[e] && entries[e ^ 1u] != 0)
				{
					candidates.push_back(e);
				}
			}
			// Always nonempty: symbol n-1 has two open entries and at most one
			// of them can be 0 at this point (none are).
			entries[candidates[rng.below(candidates.size())]] = 0;
		}
	}

	std::vector<Production> productions(n);
	for(std::size_t k = 0; k < n; ++k)
	{
		productions[k] = {entries[2 * k], entries[2 * k + 1]};
	}
	return Grammar(std::move(productions), 0);
}

Grammar build_random_grammar(std::size_t n_symbols, Rng& rng, bool enforce_constraints,
                             std::size_t max_attempts)
{
	if(n_symbols == 0)
	{
		throw std::invalid_argument("grammar needs at least one symbol");
	}
	auto draw = [&rng, n_symbols] { return static_cast<Symbol>(rng.below(n_symbols)); };
	for(std::size_t attempt = 0; attempt < max_attempts; ++attempt)
	{
		// Plain draws leave about N e^-2 symbols unproduced, so constrained
		// tables start from a shuffle holding every symbol once plus N draws.
		std::vector<Symbol> entries(2 * n_symbols);
		for(std::size_t i = 0; i < entries.size(); ++i)
		{
			entries[i] = enforce_constraints && i < n_symbols ? static_cast<Symbol>(i) : draw();
		}
		if(enforce_constraints)
		{
			for(std::size_t i = entries.size() - 1; i > 0; --i)
			{
				std::swap(entries[i], entries[rng.below(i + 1)]);
			}
			// Break twins by swapping with random entries; the multiset is kept.
			for(std::size_t pass = 0; pass < 4; ++pass)
			{
				for(std::size_t s = 0; s < n_symbols; ++s)
				{
					if(entries[2 * s] == entries[2 * s + 1])
					{
						std::swap(entries[2 * s + 1], entries[rng.below(entries.size())]);
					}
				}
			}
		}
		std::vector<Production> productions(n_symbols);
		for(std::size_t s = 0; s < n_symbols; ++s)
		{
			productions[s] = {entries[2 * s], entries[2 * s + 1]};
		}
		Grammar g(std::move(productions), 0);
		if(!enforce_constraints || validate_grammar(g).clean())
		{
			return g;
		}
	}
	throw std::runtime_error("no constrained random grammar found with " +
	                         std::to_string(n_symbols) + " symbols");
}

GrammarReport validate_grammar(const Grammar& grammar)
{
	const auto n = grammar.size();
	GrammarReport report;

	std::vector<bool> produced(n, false);
	for(Symbol s = 0; s < n; ++s)
	{
		const auto& p = grammar[s];
		if(p.left == p.right)
		{
			report.twin_rules.push_back(s);
		}
		produced[p.left] = true;
		produced[p.right] = true;
	}

	std::vector<bool> reached(n, false);
	std::vector<Symbol> stack{grammar.start()};
	reached[grammar.start()] = true;
	while(!stack.empty())
	{
		const auto s = stack.back();
		stack.pop_back();
		for(auto child : {grammar[s].left, grammar[s].right})
		{
			if(!reached[child])
			{
				reached[child] = true;
				stack.push_back(child);
			}
		}
	}

	for(Symbol s = 0; s < n; ++s)
	{
		if(!reached[s])
		{
			report.unreachable.push_back(s);
		}
		if(!produced[s])
		{
			report.unproduced.push_back(s);
		}
	}
	report.fragmented = !report.unreachable.empty();
	return report;
}

void write_grammar(std::ostream& out, const Grammar& grammar)
{
	out << grammar.size() << ' ' << grammar.start() << '\n';
	for(const auto& p : grammar.productions())
	{
		out << p.left << ' ' << p.right << '\n';
	}
}

Grammar read_grammar(std::istream& in)
{
	std::string line;
	int line_number = 0;
	auto next_line = [&]() -> std::istringstream {
		while(std::getline(in, line))
		{
			++line_number;
			if(line.find_first_not_of(" \t\r") != std::string::npos)
			{
				return std::istringstream(line);
			}
		}
		throw ParseError(line_number + 1, "unexpected end of grammar");
	};

	long long n = 0, start = 0;
	{
		auto header = next_line();
		if(!(header >> n >> start) || n < 1 || start < 0 || start >= n)
		{
			throw ParseError(line_number, "expected `N start` with 0 <= start < N");
		}
	}

	std::vector<Production> productions(static_cast<std::size_t>(n));
	for(auto& p : productions)
	{
		auto fields = next_line();
		long long left = -1, right = -1;
		std::string extra;
		if(!(fields >> left >> right) || (fields >> extra) || left < 0 || right < 0 || left >= n ||
		   right >= n)
		{
			throw ParseError(line_number, "expected `left right` within the alphabet");
		}
		p = {static_cast<Symbol>(left), static_cast<Symbol>(right)};
	}
	return Grammar(std::move(productions), static_cast<Symbol>(start));
}

std::ostream& operator<<(std::ostream& out, const GrammarReport& report)
{
	auto list = [&out](const char* name, const std::vector<Symbol>& symbols) {
		out << name << ':';
		for(auto s : symbols)
		{
			out << ' ' << s;
		}
		out << '\n';
	};
	list("twin_rules", report.twin_rules);
	list("unreachable", report.unreachable);
	list("unproduced", report.unproduced);
	out << "fragmented: " << (report.fragmented ? "yes" : "no") << '\n';
	return out;
}

} // namespace artowen
