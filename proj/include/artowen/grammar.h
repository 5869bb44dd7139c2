// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the ArtOwen Project.

#pragma once

#include <artowen/rng.h>

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace artowen
{

using Symbol = std::uint32_t;

/// Binary production rule: symbol k produces (left, right) children.
struct Production
{
	Symbol left;
	Symbol right;

	Symbol child(unsigned bit) const { return bit ? right : left; }
	bool operator==(const Production&) const = default;
};

/// Context-free grammar over the alphabet {0 .. N-1} with branching rate 2.
class Grammar
{
  public:
	/// Throws std::invalid_argument when the table is empty or an entry or
	/// the start symbol is outside the alphabet.
	Grammar(std::vector<Production> productions, Symbol start = 0);

	std::size_t size() const { return productions_.size(); }
	Symbol start() const { return start_; }
	const std::vector<Production>& productions() const { return productions_; }
	const Production& operator[](Symbol s) const { return productions_[s]; }

	bool operator==(const Grammar&) const = default;

  private:
	std::vector<Production> productions_;
	Symbol start_;
};

struct GrammarReport
{
	std::vector<Symbol> twin_rules;
	std::vector<Symbol> unreachable;
	std::vector<Symbol> unproduced;
	bool fragmented = false;

	bool clean() const { return twin_rules.empty() && unreachable.empty() && unproduced.empty(); }
};

/// Prefix of the Thue-Morse word as '0'/'1' characters.
std::string thue_morse_word(std::size_t length);

/// Distinct length-L factors of the Thue-Morse word in order of first
/// occurrence; factor i is symbol i of build_tm_grammar(L).
std::vector<std::string> thue_morse_factors(std::size_t window);

/// Grammar whose symbols are the length-L factors of the Thue-Morse word.
/// Factor w produces the factors at offsets 0 and 1 of its image under
/// 0 -> 01, 1 -> 10. The start symbol is the factor at position 0.
Grammar build_tm_grammar(std::size_t window);

/// Breadth-first grammar: symbol k produces (2k+1, 2k+2) wherever both are in
/// range, so the top of every tree carries distinct symbols. Entries left
/// open are drawn from rng. With `constrained`, draws avoid twin rules and
/// make sure symbol 0 is produced somewhere (N >= 2).
Grammar build_ordered_grammar(std::size_t n_symbols, Rng& rng, bool constrained = true);

/// Random production table, uniform when unconstrained. With
/// `enforce_constraints`, every symbol is placed in the table once before
/// shuffling, twins are broken by random swaps, and the table is redrawn until
/// validate_grammar() reports no problems; throws std::runtime_error after
/// max_attempts draws.
Grammar build_random_grammar(std::size_t n_symbols, Rng& rng, bool enforce_constraints,
                             std::size_t max_attempts = 100000);

GrammarReport validate_grammar(const Grammar& grammar);

/// Text format: `N start`, then N lines `left right`.
void write_grammar(std::ostream& out, const Grammar& grammar);
Grammar read_grammar(std::istream& in);

std::ostream& operator<<(std::ostream& out, const GrammarReport& report);

} // namespace artowen
