// Test helpers: random formula generators, a brute-force evaluator over small
// sets, and an explicit-automaton reading of terms.

#ifndef WSONE_TEST_SUPPORT_HPP
#define WSONE_TEST_SUPPORT_HPP

#include "wsone/automata.hpp"
#include "wsone/formula.hpp"
#include "wsone/terms.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace wsone::testing {

struct RandomShape {
    int max_vars = 4;  // universe tracks
    int max_depth = 6; // AST depth
};

/// Random formula as generated, possibly with free and re-bound variables.
Problem random_raw_formula(std::mt19937_64& rng, const RandomShape& shape = {});

/// Ground formula built from all four atoms, the connectives and quantifiers
/// over one or two variables; free variables are closed existentially.
Problem random_formula(std::mt19937_64& rng, const RandomShape& shape = {});

/// Formula over `free` free tracks (0..free-1, bounded by {0,1,2}) whose
/// quantifiers are all guarded so that the bound variable stays inside
/// {0,1,2}. At most three tracks in total.
Problem guarded_formula(std::mt19937_64& rng, int free, int max_depth = 5);

/// Assignment of a subset of {0,1,2,...} (bit i = position i) per track.
using Assignment = std::vector<std::uint32_t>;

/// Truth of `f` with every quantifier ranging over subsets of {0,1,2}.
bool eval_bounded(const Formula& f, Assignment& a);

/// Encoding of `a` as a word of `length` concrete symbols.
std::vector<Cube> encode(const Assignment& a, std::size_t width, std::size_t length);

/// Explicit automaton with the language of a term (stars and pending
/// quotients included), built without the lazy machinery.
Nfa lower_term(TermContext& ctx, TermId t);

/// Structure of a term spelled out, independent of node numbering. Stars
/// and pending quotients are shown by their defining parts.
std::string structure(const TermContext& ctx, TermId t);

/// L(a) ⊆ L(b).
bool included(const Nfa& a, const Nfa& b);
bool equivalent(const Nfa& a, const Nfa& b);

/// All words of length <= max_len over the concrete symbols of `width`
/// tracks.
std::vector<std::vector<Cube>> all_words(std::size_t width, std::size_t max_len);

/// Validity of a ground formula by the explicit procedure.
bool explicit_valid(const Problem& p);

/// Relabelling of a complete DFA in breadth-first order over the concrete
/// symbols; equal strings mean isomorphic automata.
std::string canonical_form(const Nfa& dfa);

/// Truth of a quantifier-free formula on a word.
bool eval_word(const Formula& f, std::span<const Cube> word);

/// Ex. 1 of the worked example.
inline constexpr const char* kExampleOne = "ex2 X: Sing(X) & (ex2 Y: Y = X + 1)";

} // namespace wsone::testing

#endif
