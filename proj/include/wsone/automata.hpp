// automata.hpp -- finite automata over cube-labelled alphabets.
//
// Transitions carry cubes: a transition (p, c, q) stands for (p, τ, q) for
// every concrete symbol τ in the denotation of c. All constructions work on
// cubes directly; concrete symbols are never enumerated.

#ifndef WSONE_AUTOMATA_HPP
#define WSONE_AUTOMATA_HPP

#include "wsone/alphabet.hpp"
#include "wsone/formula.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsone {

using State = std::uint32_t;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Set of states of one automaton, stored as a bitset.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t capacity) : words_((capacity + 63) / 64, 0), capacity_(capacity) {}
    StateSet(std::size_t capacity, std::initializer_list<State> states);

    std::size_t capacity() const { return capacity_; }
    void resize(std::size_t capacity);

    void insert(State q) { words_[q / 64] |= std::uint64_t{1} << (q % 64); }
    void erase(State q) { words_[q / 64] &= ~(std::uint64_t{1} << (q % 64)); }
    bool contains(State q) const
    {
        return q < capacity_ && (words_[q / 64] >> (q % 64)) & 1U;
    }
    bool empty() const;
    std::size_t count() const;

    bool intersects(const StateSet& o) const;
    bool subset_of(const StateSet& o) const;
    StateSet& operator|=(const StateSet& o);

    std::vector<State> elements() const;
    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1)
                f(static_cast<State>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))));
    }

    std::size_t hash() const;
    bool operator==(const StateSet& o) const { return words_ == o.words_; }
    auto operator<=>(const StateSet& o) const { return words_ <=> o.words_; }

private:
    std::vector<std::uint64_t> words_;
    std::size_t capacity_ = 0;
};

struct Edge {
    Cube cube;
    State other; // target for outgoing edges, source for incoming ones
};

struct Transition {
    State src;
    Cube cube;
    State dst;
    auto operator<=>(const Transition&) const = default;
};

class Nfa {
public:
    explicit Nfa(std::size_t width = 0) : width_(width) {}

    /// Number of universe tracks the cubes range over.
    std::size_t width() const { return width_; }
    std::size_t num_states() const { return out_.size(); }
    std::size_t num_transitions() const { return num_transitions_; }

    State add_state();
    void add_states(std::size_t n);
    void add_transition(State src, Cube cube, State dst);

    void set_initial(State q) { initial_.insert(q); }
    void set_final(State q) { final_.insert(q); }
    void set_final(StateSet f);

    const StateSet& initial() const { return initial_; }
    const StateSet& final() const { return final_; }
    const std::vector<Edge>& out(State q) const { return out_[q]; }
    const std::vector<Edge>& in(State q) const { return in_[q]; }

    /// All transitions in (src, insertion) order.
    std::vector<Transition> transitions() const;

    /// Tracks some transition constrains.
    TrackMask read_tracks() const;

private:
    std::size_t width_ = 0;
    std::vector<std::vector<Edge>> out_;
    std::vector<std::vector<Edge>> in_;
    StateSet initial_;
    StateSet final_;
    std::size_t num_transitions_ = 0;
};

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

/// Automaton accepting every encoding of a model of `atom`, cylindrified over
/// the other tracks of a universe of `width` tracks.
Nfa atom_automaton(const Formula& atom, std::size_t width);

/// States with a transition over some symbol of `c` into `targets`.
StateSet pre(const Nfa& a, const StateSet& targets, const Cube& c);
/// States reachable from `sources` by one symbol of `c`.
StateSet post(const Nfa& a, const StateSet& sources, const Cube& c);

enum class BoolOp { And, Or };

Nfa product(const Nfa& a, const Nfa& b, BoolOp op, std::size_t budget = kDefaultStateBudget);
/// Adds a non-accepting sink so every state has a successor for every symbol.
Nfa complete(const Nfa& a);
/// Subset construction; the result is deterministic and complete.
Nfa determinize(const Nfa& a, std::size_t budget = kDefaultStateBudget);
Nfa determinize_complement(const Nfa& a, std::size_t budget = kDefaultStateBudget);
Nfa project_vars(const Nfa& a, TrackMask vars);
/// Closes the final states backwards under the all-zero symbol (L − 0̄*).
Nfa saturate_zero(const Nfa& a);
/// Language-equivalent minimal complete DFA. Nondeterministic inputs are
/// determinized first.
Nfa minimize(const Nfa& a, std::size_t budget = kDefaultStateBudget);
Nfa with_final(const Nfa& a, StateSet f);
/// Keeps only states reachable from the initial states.
Nfa trim(const Nfa& a);

bool is_deterministic(const Nfa& a);
bool is_complete(const Nfa& a);
bool is_empty(const Nfa& a);
bool accepts(const Nfa& a, std::span<const Cube> word);
/// ε ∈ L(a).
inline bool accepts_empty(const Nfa& a) { return a.initial().intersects(a.final()); }

void dump(std::ostream& os, const Nfa& a);
Nfa load(std::istream& is);

} // namespace wsone

template <>
struct std::hash<wsone::StateSet> {
    std::size_t operator()(const wsone::StateSet& s) const noexcept { return s.hash(); }
};

#endif
