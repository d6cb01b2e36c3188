#include "wsone/solver.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wsone {

const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::Valid: return "VALID";
    case Outcome::Invalid: return "INVALID";
    case Outcome::Sat: return "SAT";
    case Outcome::Unsat: return "UNSAT";
    case Outcome::BudgetExhausted: return "BUDGET";
    }
    return "?";
}

const char* to_string(Mode m)
{
    switch (m) {
    case Mode::Lazy: return "lazy";
    case Mode::Explicit: return "explicit";
    case Mode::Combined: return "combined";
    }
    return "?";
}

std::optional<Mode> parse_mode(std::string_view s)
{
    if (s == "lazy")
        return Mode::Lazy;
    if (s == "explicit")
        return Mode::Explicit;
    if (s == "combined")
        return Mode::Combined;
    return std::nullopt;
}

Problem preprocess(const Problem& p, bool do_antiprenex)
{
    Problem q = alpha_rename(p);
    if (do_antiprenex)
        q = antiprenex(q);
    return compact_universe(q);
}

// ---------------------------------------------------------------------------
// Explicit procedure

namespace {

using Clock = std::chrono::steady_clock;

struct ExplicitBuilder {
    std::size_t width;
    std::size_t& states;
    std::size_t budget;
    std::span<const Nfa> lowered;
    std::optional<Clock::time_point> deadline;

    Nfa counted(Nfa a)
    {
        states += a.num_states();
        if (deadline && Clock::now() > *deadline)
            throw BudgetExceeded("time budget exhausted");
        return a;
    }

    Nfa minimal(const Nfa& a) { return counted(minimize(counted(determinize(a, budget)), budget)); }

    Nfa run(const Formula& f)
    {
        switch (f.kind) {
        case Formula::Kind::Sub:
        case Formula::Kind::Sing:
        case Formula::Kind::IsZero:
        case Formula::Kind::Succ: return minimal(counted(atom_automaton(f, width)));
        case Formula::Kind::Automaton: return lowered[f.automaton];
        case Formula::Kind::And:
            return minimal(counted(product(run(f.child(0)), run(f.child(1)), BoolOp::And, budget)));
        case Formula::Kind::Or:
            return minimal(counted(product(run(f.child(0)), run(f.child(1)), BoolOp::Or, budget)));
        case Formula::Kind::Not:
            return counted(minimize(counted(determinize_complement(run(f.child(0)), budget)), budget));
        case Formula::Kind::Exists: {
            TrackMask vars = 0;
            for (Track v : f.vars)
                vars |= track_bit(v);
            return minimal(saturate_zero(project_vars(run(f.child(0)), vars)));
        }
        }
        throw std::logic_error("explicit_automaton: unknown formula kind");
    }
};

std::optional<Clock::time_point> deadline_of(const SolveOptions& opts)
{
    if (!opts.timeout_seconds)
        return std::nullopt;
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(*opts.timeout_seconds));
}

void dump_automata(const std::string& dir, std::span<const Nfa> automata)
{
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < automata.size(); ++i) {
        std::ofstream os(std::filesystem::path(dir) / ("automaton_" + std::to_string(i) + ".txt"));
        dump(os, automata[i]);
    }
}

std::vector<Track> tracks_of(TrackMask m)
{
    std::vector<Track> out;
    for (Track t = 0; m; ++t, m >>= 1)
        if (m & 1U)
            out.push_back(t);
    return out;
}

} // namespace

Nfa explicit_automaton(const Formula& f, std::size_t width, std::size_t& states_built,
                       std::size_t budget, std::span<const Nfa> lowered)
{
    return ExplicitBuilder{width, states_built, budget, lowered, std::nullopt}.run(f);
}

// ---------------------------------------------------------------------------
// Lowering for the combined mode

namespace {

bool is_negated_innermost_exists(const Formula& f)
{
    return f.kind == Formula::Kind::Not && f.child(0).kind == Formula::Kind::Exists &&
           is_quantifier_free(f.child(0).child(0));
}

struct Lowerer {
    std::size_t width;
    std::size_t budget;
    std::optional<Clock::time_point> deadline;
    std::vector<Nfa> automata;
    std::size_t states = 0;

    Formula run(const Formula& f)
    {
        if (f.is_atom() || f.kind == Formula::Kind::Automaton)
            return f;
        if (is_quantifier_free(f) || is_negated_innermost_exists(f)) {
            try {
                Nfa a = ExplicitBuilder{width, states, budget, automata, deadline}.run(f);
                automata.push_back(std::move(a));
                return Formula::automaton_leaf(automata.size() - 1, tracks_of(free_vars(f)));
            } catch (const BudgetExceeded&) {
                // Stays symbolic; its parts may still be lowered.
            }
        }
        Formula out = f;
        for (auto& c : out.children)
            c = run(c);
        return out;
    }
};

} // namespace

LoweredFormula lower_subterms(const Problem& p, const SolveOptions& opts, std::size_t* states_built)
{
    Lowerer l{p.universe.size(), opts.state_budget, deadline_of(opts), {}, 0};
    LoweredFormula out{{p.universe, l.run(p.formula)}, {}};
    out.automata = std::move(l.automata);
    if (states_built)
        *states_built += l.states;
    return out;
}

// ---------------------------------------------------------------------------
// Decision

namespace {

void copy_term_stats(const TermContext& ctx, SolveStats& s)
{
    const auto& t = ctx.stats();
    s.terms_interned = t.terms_interned;
    s.fixpoint_iterations = t.fixpoint_iterations;
    s.cache_hits = t.cache_hits;
    s.early_terminated_fixpoints = t.early_terminated_fixpoints;
    s.saturated_fixpoints = t.saturated_fixpoints;
    s.subsumption_tests = t.subsumption_tests;
    s.pruned = t.pruned;
    s.base_sizes.clear();
    for (TermId star : ctx.stars())
        s.base_sizes.push_back(ctx.fixpoint(star).base_sizes);
}

TermOptions term_options(const SolveOptions& opts, std::optional<Clock::time_point> deadline)
{
    TermOptions t;
    t.prune = opts.prune;
    t.incremental_frontier = opts.incremental_frontier;
    t.subsumption = opts.subsumption;
    t.iteration_budget = opts.iteration_budget;
    t.deadline = deadline;
    t.trace = opts.trace;
    return t;
}

} // namespace

Verdict decide_valid(const Problem& p, const SolveOptions& opts)
{
    const Problem q = preprocess(p, opts.antiprenex);
    if (!is_ground(q.formula))
        throw std::invalid_argument("decide_valid needs a ground formula; use decide_sat");

    Verdict v;
    const auto deadline = deadline_of(opts);
    bool result = false;
    try {
        switch (opts.mode) {
        case Mode::Explicit: {
            std::size_t states = 0;
            const Nfa a = ExplicitBuilder{q.universe.size(), states, opts.state_budget, {}, deadline}
                              .run(q.formula);
            v.stats.automata_states = states;
            result = accepts_empty(a);
            if (opts.dump_dir)
                dump_automata(*opts.dump_dir, std::span<const Nfa>(&a, 1));
            break;
        }
        case Mode::Lazy:
        case Mode::Combined: {
            std::size_t lowered_states = 0;
            LoweredFormula lowered{q, {}};
            if (opts.mode == Mode::Combined) {
                lowered = lower_subterms(q, opts, &lowered_states);
                v.stats.lowered_subformulae = lowered.automata.size();
            }
            TermContext ctx(q.universe, term_options(opts, deadline));
            const TermId root = ctx.build(lowered.problem.formula, lowered.automata);
            try {
                result = ctx.eps_mem(root);
            } catch (...) {
                copy_term_stats(ctx, v.stats);
                throw;
            }
            copy_term_stats(ctx, v.stats);
            v.stats.automata_states = lowered_states + ctx.stats().leaf_states;
            if (opts.dump_dir) {
                std::vector<Nfa> leaves;
                for (std::uint32_t i = 0; i < ctx.num_automata(); ++i)
                    leaves.push_back(ctx.automaton(i));
                dump_automata(*opts.dump_dir, leaves);
            }
            break;
        }
        }
    } catch (const BudgetExceeded& e) {
        v.result = Outcome::BudgetExhausted;
        v.message = e.what();
        return v;
    } catch (const AlphabetError& e) {
        v.result = Outcome::BudgetExhausted;
        v.message = e.what();
        return v;
    }
    v.result = result ? Outcome::Valid : Outcome::Invalid;
    return v;
}

Verdict decide_sat(const Problem& p, const SolveOptions& opts)
{
    Verdict v = decide_valid(existential_closure(alpha_rename(p)), opts);
    if (v.result == Outcome::Valid)
        v.result = Outcome::Sat;
    else if (v.result == Outcome::Invalid)
        v.result = Outcome::Unsat;
    return v;
}

std::string render_stats(const SolveStats& s)
{
    std::ostringstream os;
    os << "terms_interned=" << s.terms_interned << '\n'
       << "fixpoint_iterations=" << s.fixpoint_iterations << '\n'
       << "cache_hits=" << s.cache_hits << '\n'
       << "automata_states=" << s.automata_states << '\n'
       << "early_terminated_fixpoints=" << s.early_terminated_fixpoints << '\n'
       << "saturated_fixpoints=" << s.saturated_fixpoints << '\n'
       << "subsumption_tests=" << s.subsumption_tests << '\n'
       << "pruned=" << s.pruned << '\n'
       << "lowered_subformulae=" << s.lowered_subformulae << '\n';
    return os.str();
}

} // namespace wsone
