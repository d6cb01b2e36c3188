// solver.hpp -- deciding WS1S formulae with the lazy term procedure, the
// explicit automata procedure, or a combination of both.

#ifndef WSONE_SOLVER_HPP
#define WSONE_SOLVER_HPP

#include "wsone/automata.hpp"
#include "wsone/formula.hpp"
#include "wsone/terms.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wsone {

enum class Mode { Lazy, Explicit, Combined };

struct SolveOptions {
    Mode mode = Mode::Lazy;
    bool antiprenex = true;
    SubsumptionMode subsumption = SubsumptionMode::Eliminate;
    bool prune = true;
    bool incremental_frontier = true;
    std::size_t state_budget = kDefaultStateBudget;
    std::size_t iteration_budget = 100'000;
    std::optional<double> timeout_seconds;
    std::ostream* trace = nullptr;
    /// Directory receiving one dump per automaton used (leaves, or the final
    /// explicit automaton).
    std::optional<std::string> dump_dir;
};

enum class Outcome { Valid, Invalid, Sat, Unsat, BudgetExhausted };

struct SolveStats {
    std::size_t terms_interned = 0;
    std::size_t fixpoint_iterations = 0;
    std::size_t cache_hits = 0;
    std::size_t automata_states = 0;
    std::size_t early_terminated_fixpoints = 0;
    std::size_t saturated_fixpoints = 0;
    std::size_t subsumption_tests = 0;
    std::size_t pruned = 0;
    std::size_t lowered_subformulae = 0;
    /// Per star (creation order), |base| after each round.
    std::vector<std::vector<std::size_t>> base_sizes;
};

struct Verdict {
    Outcome result = Outcome::BudgetExhausted;
    SolveStats stats;
    std::string message; ///< reason when the budget ran out

    bool decided() const { return result != Outcome::BudgetExhausted; }
};

const char* to_string(Outcome o);
const char* to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

/// Validity of a formula that is ground once bound variables are renamed.
/// Throws std::invalid_argument for formulae with free variables.
Verdict decide_valid(const Problem& p, const SolveOptions& opts = {});
/// Satisfiability: validity of the existential closure.
Verdict decide_sat(const Problem& p, const SolveOptions& opts = {});

/// Preprocessing shared by every mode: renaming, optional anti-prenexing and
/// universe compaction.
Problem preprocess(const Problem& p, bool antiprenex);

/// Automaton for `f` built bottom-up with minimization after every step.
/// `states_built` accumulates the states of every automaton constructed.
/// Automaton leaves of `f` index into `lowered`.
Nfa explicit_automaton(const Formula& f, std::size_t width, std::size_t& states_built,
                       std::size_t budget = kDefaultStateBudget,
                       std::span<const Nfa> lowered = {});

struct LoweredFormula {
    Problem problem;
    std::vector<Nfa> automata; ///< referenced by Automaton leaves
};

/// Replaces maximal quantifier-free sub-formulae (other than single atoms) and
/// negated innermost quantifiers by minimized automata. A part whose
/// construction runs out of budget stays symbolic.
LoweredFormula lower_subterms(const Problem& p, const SolveOptions& opts,
                              std::size_t* states_built = nullptr);

/// `key=value` lines.
std::string render_stats(const SolveStats& s);

} // namespace wsone

#endif
