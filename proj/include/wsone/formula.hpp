// formula.hpp -- WS1S abstract syntax, the textual surface format, and
// verdict-preserving preprocessing.
//
// Grammar (lowest to highest precedence):
//
//   formula := 'ex2' varlist ':' formula | formula '|' formula
//            | formula '&' formula | '~' formula | '(' formula ')' | atom
//   atom    := 'Sing(' V ')' | 'Sub(' V ',' V ')' | V '= {0}' | V '=' V '+ 1'
//
// `ex2` extends as far to the right as possible. Comments run from '#' to the
// end of the line.

#ifndef WSONE_FORMULA_HPP
#define WSONE_FORMULA_HPP

#include "wsone/alphabet.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wsone {

struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, SourcePos p);
    SourcePos pos;
};

class Formula {
public:
    enum class Kind {
        Sub,       // vars[0] ⊆ vars[1]
        Sing,      // vars[0] is a singleton
        IsZero,    // vars[0] = {0}
        Succ,      // vars[0] = vars[1] + 1
        And,
        Or,
        Not,
        Exists,    // ∃ vars: children[0]
        Automaton, // pre-built automaton leaf; vars lists the tracks it reads
    };

    Kind kind = Kind::Sing;
    std::vector<Track> vars;
    std::vector<Formula> children;
    std::size_t automaton = 0;
    SourcePos pos;

    static Formula sub(Track x, Track y) { return atom(Kind::Sub, {x, y}); }
    static Formula sing(Track x) { return atom(Kind::Sing, {x}); }
    static Formula is_zero(Track x) { return atom(Kind::IsZero, {x}); }
    static Formula succ(Track x, Track y) { return atom(Kind::Succ, {x, y}); }
    static Formula conj(Formula l, Formula r);
    static Formula disj(Formula l, Formula r);
    static Formula negate(Formula f);
    static Formula exists(std::vector<Track> vars, Formula body);
    static Formula automaton_leaf(std::size_t index, std::vector<Track> tracks);

    bool is_atom() const { return kind <= Kind::Succ; }
    const Formula& child(std::size_t i) const { return children.at(i); }

    /// Structural equality, ignoring source positions.
    bool operator==(const Formula& o) const;

private:
    static Formula atom(Kind k, std::vector<Track> v);
};

/// A formula together with the universe its tracks index into.
struct Problem {
    Universe universe;
    Formula formula;
};

Problem parse(std::string_view text);
/// Prints with the minimal parentheses the grammar needs; parse(print(p))
/// reproduces p.formula.
std::string print(const Formula& f, const Universe& u);
inline std::string print(const Problem& p) { return print(p.formula, p.universe); }

TrackMask free_vars(const Formula& f);
/// Every track mentioned by an atom or a quantifier.
TrackMask all_vars(const Formula& f);
bool is_ground(const Formula& f);
bool is_quantifier_free(const Formula& f);

/// Renames bound variables so that each is quantified once and none clashes
/// with a free variable.
Problem alpha_rename(const Problem& p);
/// ∃ free(f): f. Identity on ground formulae.
Problem existential_closure(const Problem& p);

inline constexpr int kDefaultAntiprenexPasses = 8;

/// Pushes negations to the leaves and quantifiers as far down as the free
/// variables allow. Expects an alpha-renamed input.
Problem antiprenex(const Problem& p, int max_passes = kDefaultAntiprenexPasses);

/// Negation normal form: negations only directly above atoms, automaton
/// leaves, or existential quantifiers.
Formula push_negations(const Formula& f);

/// Drops universe tracks no longer mentioned and renumbers the rest densely,
/// keeping their relative order.
Problem compact_universe(const Problem& p);

/// Largest number of bound variables whose scope contains one leaf.
std::size_t quantifier_depth(const Formula& f);
std::size_t ast_depth(const Formula& f);

} // namespace wsone

#endif
