// terms.hpp -- language terms: a hash-consed DAG over automata leaves with
// union, intersection, complement, projection, term sets, star quotients and
// pending symbol quotients on unfinished stars.
//
// Every node denotes a fixed regular language. Star nodes (T −. S*) and
// pending quotients ((T −. S*) −. w) are evaluated lazily: their fixpoint
// state publishes an under-approximation that ε-membership and subsumption
// queries consult before forcing further iterations.

#ifndef WSONE_TERMS_HPP
#define WSONE_TERMS_HPP

#include "wsone/alphabet.hpp"
#include "wsone/automata.hpp"
#include "wsone/formula.hpp"

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace wsone {

using TermId = std::uint32_t;

enum class TermKind : std::uint8_t { Leaf, Union, Inter, Compl, Proj, Set, Star, Pending };

/// Structural content of a node; two nodes with equal content are the same
/// node.
struct TermNode {
    TermKind kind = TermKind::Leaf;
    std::uint32_t automaton = 0;        // Leaf
    StateSet finals;                    // Leaf: final-state override
    std::vector<TermId> kids;           // Union/Inter: {l, r}; Compl/Proj: {t};
                                        // Star: {initial set}; Pending: {star};
                                        // Set: sorted elements
    TrackMask mask = 0;                 // Proj: projected tracks
    std::vector<Cube> symbols;          // Star: {S}; Pending: quotient word

    bool operator==(const TermNode&) const = default;
};

enum class SubsumptionMode {
    Eliminate, ///< force unfinished stars to saturate when compared
    Cheap,     ///< answer from published approximations, negative otherwise
};

struct TermOptions {
    bool prune = true;                ///< drop base elements subsumed by newer ones
    bool incremental_frontier = true; ///< quotient only last round's additions
    SubsumptionMode subsumption = SubsumptionMode::Eliminate;
    /// Cheap mode switches a star to eliminating subsumption after this many
    /// rounds so that its fixpoint is guaranteed to close.
    std::size_t cheap_round_limit = 4;
    std::size_t iteration_budget = 100'000; ///< per star
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::ostream* trace = nullptr;
    /// Keep every positive subsumption answer in subsumption_log().
    bool record_subsumptions = false;
    /// Quotient by the symbols of a star in reverse lexicographic order.
    bool reverse_symbol_order = false;
};

struct TermStats {
    std::size_t terms_interned = 0;
    std::size_t fixpoint_iterations = 0;
    std::size_t cache_hits = 0;
    std::size_t eps_tests = 0;
    std::size_t subsumption_tests = 0;
    std::size_t quotients = 0;
    std::size_t pruned = 0;
    std::size_t leaf_states = 0;
    std::size_t saturated_fixpoints = 0;
    std::size_t early_terminated_fixpoints = 0;
};

enum class StepResult { Progress, Saturated };

/// Mutable evaluation state of one star node T −. S*.
struct FixpointState {
    TermId node = 0;
    Cube symbols;                    ///< S as one cube
    std::vector<TermId> base;        ///< current T, an antichain when pruning
    std::vector<TermId> frontier;    ///< elements added by the last round
    std::vector<TermId> candidates;  ///< quotients computed but not yet merged
    bool expanded = false;           ///< candidates hold the next round
    bool saturated = false;
    std::size_t rounds = 0;
    std::vector<std::size_t> base_sizes; ///< |base| after each round
    std::optional<TermId> published;     ///< Set node of `base`, built on demand
    bool early_true = false;             ///< ε of it or a pending quotient of it
                                         ///< concluded before saturation
};

class TermContext {
public:
    TermContext(Universe universe, TermOptions options = {});

    const Universe& universe() const { return universe_; }
    std::size_t width() const { return universe_.size(); }
    const TermOptions& options() const { return options_; }
    TermOptions& options() { return options_; }

    // -- construction -------------------------------------------------------

    std::uint32_t add_automaton(Nfa a);
    const Nfa& automaton(std::uint32_t i) const { return automata_.at(i); }
    std::size_t num_automata() const { return automata_.size(); }

    TermId intern(TermNode node);
    TermId leaf(std::uint32_t automaton, StateSet finals);
    TermId leaf(std::uint32_t automaton);
    TermId unite(TermId l, TermId r);
    TermId intersect(TermId l, TermId r);
    TermId complement(TermId t);
    TermId project(TrackMask vars, TermId t);
    TermId set(std::vector<TermId> elements);
    TermId star(TermId initial_set, Cube symbols);

    /// Term of a formula over this context's universe. Automaton leaves of
    /// the formula index into `lowered`.
    TermId build(const Formula& f, std::span<const Nfa> lowered = {});

    // -- queries ------------------------------------------------------------

    const TermNode& node(TermId t) const { return nodes_.at(t); }
    std::size_t num_nodes() const { return nodes_.size(); }
    /// Tracks the language of `t` may depend on.
    TrackMask relevant(TermId t) const { return relevant_.at(t); }

    /// ε ∈ L(t).
    bool eps_mem(TermId t);
    /// Right quotient L(t) − c (union over the symbols of c).
    TermId quot(TermId t, const Cube& c);
    /// Sound under-approximation of L(t) ⊆ L(u).
    bool subsumes(TermId t, TermId u);

    /// One round of the star fixpoint of `star_node`.
    StepResult star_step(TermId star_node);
    void saturate(TermId star_node);
    /// Forces every star in the context to saturate.
    void saturate_all();
    bool is_saturated(TermId star_or_pending) const;

    /// Quotient-free (for this node) Set with the exact language of a star or
    /// pending node; forces saturation.
    TermId exact(TermId star_or_pending);

    const FixpointState& fixpoint(TermId star_node) const;
    /// Star nodes in creation order.
    const std::vector<TermId>& stars() const { return star_order_; }

    const TermStats& stats() const { return stats_; }
    const std::vector<std::pair<TermId, TermId>>& subsumption_log() const { return subsumption_log_; }

    std::string describe(TermId t) const;

private:
    struct NodeHash {
        std::size_t operator()(const TermNode& n) const noexcept;
    };
    struct PairHash {
        std::size_t operator()(const std::pair<TermId, Cube>& p) const noexcept;
    };
    struct PendingState {
        std::unordered_set<TermId> processed; // star elements already quotiented
        std::vector<TermId> approx;           // their quotients, in order
        std::optional<TermId> resolved;
    };

    /// Leaf whose finals are unreachable: the empty language.
    bool is_empty_leaf(TermId t) const;
    /// Set of the non-empty parts; a single part stands for itself.
    TermId set_without_empty(std::vector<TermId> parts);
    FixpointState& fixpoint_mut(TermId star_node);
    TermId star_of(TermId t) const;
    void expand(FixpointState& fs);
    StepResult integrate(FixpointState& fs);
    /// Makes one unit of progress on an unsaturated star.
    void advance(TermId star_node);
    bool eps_star(TermId t);
    bool eps_pending(TermId t);
    void refresh_pending(TermId t);
    /// Elements the star currently publishes: base then unmerged candidates.
    std::vector<TermId> published_elements(TermId star_node) const;
    TermId quot_word(TermId t, std::span<const Cube> word);
    /// `exact` is cleared when a negative answer depends on an unfinished
    /// approximation.
    bool check_subsumes(TermId t, TermId u, bool& exact);
    bool subsumes_uncached(TermId t, TermId u, bool& exact);
    void record_subsumed(TermId t, TermId u);
    bool eliminating() const;
    void check_deadline() const;
    void trace(const char* rule, TermId node, const std::string& detail = {}) const;

    Universe universe_;
    TermOptions options_;
    TermStats stats_;

    std::vector<Nfa> automata_;
    std::vector<StateSet> reachable_; // per automaton, from the initial states
    std::unordered_map<std::string, std::uint32_t> atom_automata_;
    std::vector<TermNode> nodes_;
    std::vector<TrackMask> relevant_;
    std::unordered_map<TermNode, TermId, NodeHash> ids_;

    std::unordered_map<TermId, std::size_t> fixpoint_index_;
    std::vector<FixpointState> fixpoints_;
    std::vector<TermId> star_order_;
    std::unordered_map<TermId, PendingState> pending_;

    std::unordered_map<TermId, bool> eps_cache_;
    std::unordered_map<std::pair<TermId, Cube>, TermId, PairHash> quot_cache_;
    std::unordered_map<TermId, std::vector<TermId>> above_; // t ⊑ each of above_[t]
    std::unordered_map<TermId, std::vector<TermId>> below_;
    std::unordered_set<std::uint64_t> subsumed_;
    std::unordered_set<std::uint64_t> not_subsumed_;
    std::vector<std::pair<TermId, TermId>> subsumption_log_;
    std::size_t force_eliminate_ = 0;
};

const char* to_string(TermKind k);

} // namespace wsone

#endif
