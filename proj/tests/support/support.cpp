#include "support.hpp"

#include "wsone/solver.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <stdexcept>

namespace wsone::testing {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Formula random_atom(std::mt19937_64& rng, int vars)
{
    const auto v = [&] { return static_cast<Track>(pick(rng, 0, vars - 1)); };
    switch (pick(rng, 0, 3)) {
    case 0: return Formula::sub(v(), v());
    case 1: return Formula::sing(v());
    case 2: return Formula::is_zero(v());
    default: return Formula::succ(v(), v());
    }
}

Formula random_rec(std::mt19937_64& rng, int vars, int depth)
{
    if (depth <= 1 || pick(rng, 0, 5) == 0)
        return random_atom(rng, vars);
    switch (pick(rng, 0, 4)) {
    case 0: return Formula::conj(random_rec(rng, vars, depth - 1), random_rec(rng, vars, depth - 1));
    case 1: return Formula::disj(random_rec(rng, vars, depth - 1), random_rec(rng, vars, depth - 1));
    case 2: return Formula::negate(random_rec(rng, vars, depth - 1));
    default: {
        std::vector<Track> q{static_cast<Track>(pick(rng, 0, vars - 1))};
        if (vars > 1 && pick(rng, 0, 2) == 0) {
            Track second = static_cast<Track>(pick(rng, 0, vars - 2));
            if (second >= q[0])
                ++second;
            q.push_back(second);
        }
        return Formula::exists(std::move(q), random_rec(rng, vars, depth - 1));
    }
    }
}

Universe universe_of(int vars)
{
    static const char* names[] = {"A", "B", "C", "D", "E", "F"};
    Universe u;
    for (int i = 0; i < vars; ++i)
        u.intern(names[i]);
    return u;
}

// Bound of a variable: largest position it may contain.
struct Guarded {
    std::mt19937_64& rng;
    int total;
    std::map<Track, int> bound;

    std::vector<Track> in_scope() const
    {
        std::vector<Track> out;
        for (const auto& [t, b] : bound)
            out.push_back(t);
        return out;
    }

    Formula atom()
    {
        const auto scope = in_scope();
        const auto v = [&] { return scope[static_cast<std::size_t>(pick(rng, 0, int(scope.size()) - 1))]; };
        switch (pick(rng, 0, 3)) {
        case 0: return Formula::sub(v(), v());
        case 1: return Formula::sing(v());
        case 2: return Formula::is_zero(v());
        default: return Formula::succ(v(), v());
        }
    }

    std::optional<Track> unused() const
    {
        for (int t = 0; t < total; ++t)
            if (!bound.contains(static_cast<Track>(t)))
                return static_cast<Track>(t);
        return std::nullopt;
    }

    Formula quantifier(Track x, int depth)
    {
        // Guard: x = {0}, x = y + 1 with y inside {0,1}, or x ⊆ y.
        std::vector<std::pair<Formula, int>> guards{{Formula::is_zero(x), 0}};
        for (const auto& [y, b] : bound) {
            guards.emplace_back(Formula::sub(x, y), b);
            if (b <= 1)
                guards.emplace_back(Formula::succ(x, y), b + 1);
        }
        auto [guard, b] = guards[static_cast<std::size_t>(pick(rng, 0, int(guards.size()) - 1))];
        bound[x] = b;
        Formula body = rec(depth - 1);
        bound.erase(x);
        Formula q = Formula::exists({x}, Formula::conj(std::move(guard), std::move(body)));
        return pick(rng, 0, 1) ? Formula::negate(std::move(q)) : q;
    }

    Formula rec(int depth)
    {
        const auto fresh = unused();
        if (bound.empty())
            return quantifier(*fresh, depth);
        if (depth <= 1 || pick(rng, 0, 5) == 0)
            return atom();
        const int choice = pick(rng, 0, fresh ? 4 : 2);
        switch (choice) {
        case 0: return Formula::conj(rec(depth - 1), rec(depth - 1));
        case 1: return Formula::disj(rec(depth - 1), rec(depth - 1));
        case 2: return Formula::negate(rec(depth - 1));
        default: return quantifier(*fresh, depth);
        }
    }
};

} // namespace

Problem random_raw_formula(std::mt19937_64& rng, const RandomShape& shape)
{
    const int vars = pick(rng, 1, shape.max_vars);
    return {universe_of(vars), random_rec(rng, vars, pick(rng, 2, shape.max_depth))};
}

Problem random_formula(std::mt19937_64& rng, const RandomShape& shape)
{
    return existential_closure(alpha_rename(random_raw_formula(rng, shape)));
}

bool explicit_valid(const Problem& p)
{
    std::size_t states = 0;
    return accepts_empty(explicit_automaton(p.formula, p.universe.size(), states));
}

std::string canonical_form(const Nfa& dfa)
{
    const auto syms = enumerate(Cube::full(), dfa.width());
    std::map<State, std::size_t> label;
    std::vector<State> order;
    const auto visit = [&](State q) {
        if (label.emplace(q, order.size()).second)
            order.push_back(q);
    };
    dfa.initial().for_each(visit);
    std::string out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const State q = order[i];
        out += dfa.final().contains(q) ? "F" : "N";
        for (const Cube& s : syms) {
            const StateSet next = post(dfa, StateSet(dfa.num_states(), {q}), s);
            const auto e = next.elements();
            if (e.size() != 1)
                throw std::invalid_argument("canonical_form: not a complete DFA");
            visit(e[0]);
            out += " " + std::to_string(label[e[0]]);
        }
        out += ";";
    }
    return out;
}

Problem guarded_formula(std::mt19937_64& rng, int free, int max_depth)
{
    if (free < 0 || free > 2)
        throw std::invalid_argument("guarded_formula: at most two free tracks");
    const int total = 3;
    Guarded g{rng, total, {}};
    for (int t = 0; t < free; ++t)
        g.bound[static_cast<Track>(t)] = 2;
    return Problem{universe_of(total), g.rec(pick(rng, 2, max_depth))};
}

bool eval_bounded(const Formula& f, Assignment& a)
{
    const auto set = [&](std::size_t i) { return a.at(f.vars[i]); };
    switch (f.kind) {
    case Formula::Kind::Sub: return (set(0) & ~set(1)) == 0;
    case Formula::Kind::Sing: return std::popcount(set(0)) == 1;
    case Formula::Kind::IsZero: return set(0) == 1;
    case Formula::Kind::Succ:
        return std::popcount(set(1)) == 1 && set(0) == (set(1) << 1);
    case Formula::Kind::And: return eval_bounded(f.child(0), a) && eval_bounded(f.child(1), a);
    case Formula::Kind::Or: return eval_bounded(f.child(0), a) || eval_bounded(f.child(1), a);
    case Formula::Kind::Not: return !eval_bounded(f.child(0), a);
    case Formula::Kind::Exists: {
        const Assignment saved = a;
        const std::size_t k = f.vars.size();
        bool found = false;
        for (std::uint32_t code = 0; code < (1U << (3 * k)) && !found; ++code) {
            for (std::size_t i = 0; i < k; ++i)
                a[f.vars[i]] = (code >> (3 * i)) & 7U;
            found = eval_bounded(f.child(0), a);
        }
        a = saved;
        return found;
    }
    case Formula::Kind::Automaton: break;
    }
    throw std::logic_error("eval_bounded: automaton leaf");
}

std::vector<Cube> encode(const Assignment& a, std::size_t width, std::size_t length)
{
    const TrackMask all = width == 64 ? ~TrackMask{0} : (TrackMask{1} << width) - 1;
    std::vector<Cube> word;
    for (std::size_t i = 0; i < length; ++i) {
        TrackMask v = 0;
        for (std::size_t t = 0; t < width; ++t)
            if (t < a.size() && (a[t] >> i) & 1U)
                v |= track_bit(static_cast<Track>(t));
        word.emplace_back(all, v);
    }
    return word;
}

namespace {

StateSet closure_backwards(const Nfa& a, StateSet f, const Cube& c)
{
    for (;;) {
        StateSet next = f;
        next |= pre(a, f, c);
        if (next == f)
            return f;
        f = std::move(next);
    }
}

Nfa with_union_final(Nfa a, const StateSet& extra)
{
    StateSet f = a.final();
    f.resize(a.num_states());
    f |= extra;
    return with_final(a, f);
}

Nfa empty_language(std::size_t width)
{
    Nfa a(width);
    a.set_initial(a.add_state());
    return a;
}

} // namespace

Nfa lower_term(TermContext& ctx, TermId t)
{
    const TermNode n = ctx.node(t);
    const std::size_t width = ctx.width();
    switch (n.kind) {
    case TermKind::Leaf: {
        StateSet f = n.finals;
        f.resize(ctx.automaton(n.automaton).num_states());
        return with_final(ctx.automaton(n.automaton), f);
    }
    case TermKind::Union: return product(lower_term(ctx, n.kids[0]), lower_term(ctx, n.kids[1]), BoolOp::Or);
    case TermKind::Inter:
        return product(lower_term(ctx, n.kids[0]), lower_term(ctx, n.kids[1]), BoolOp::And);
    case TermKind::Compl: return determinize_complement(lower_term(ctx, n.kids[0]));
    case TermKind::Proj: return project_vars(lower_term(ctx, n.kids[0]), n.mask);
    case TermKind::Set: {
        if (n.kids.empty())
            return empty_language(width);
        Nfa acc = lower_term(ctx, n.kids[0]);
        for (std::size_t i = 1; i < n.kids.size(); ++i)
            acc = minimize(product(acc, lower_term(ctx, n.kids[i]), BoolOp::Or));
        return acc;
    }
    case TermKind::Star: {
        const Nfa base = minimize(lower_term(ctx, n.kids[0]));
        return with_union_final(base, closure_backwards(base, base.final(), n.symbols.at(0)));
    }
    case TermKind::Pending: {
        const Nfa star = minimize(lower_term(ctx, n.kids[0]));
        StateSet f = star.final();
        for (auto it = n.symbols.rbegin(); it != n.symbols.rend(); ++it)
            f = pre(star, f, *it);
        return with_final(star, f);
    }
    }
    throw std::logic_error("lower_term: unknown kind");
}

std::string structure(const TermContext& ctx, TermId t)
{
    const TermNode& n = ctx.node(t);
    std::string out = to_string(n.kind);
    out += "(";
    if (n.kind == TermKind::Leaf) {
        out += std::to_string(n.automaton) + ":";
        for (State q : n.finals.elements())
            out += std::to_string(q) + ",";
    }
    if (n.kind == TermKind::Proj)
        out += std::to_string(n.mask) + ":";
    for (const Cube& c : n.symbols)
        out += render_compact(c, ctx.width()) + ":";
    std::vector<std::string> kids;
    for (TermId k : n.kids)
        kids.push_back(structure(ctx, k));
    if (n.kind == TermKind::Set)
        std::sort(kids.begin(), kids.end());
    for (const auto& k : kids)
        out += k + ",";
    return out + ")";
}

bool included(const Nfa& a, const Nfa& b) { return is_empty(product(a, determinize_complement(b), BoolOp::And)); }

bool equivalent(const Nfa& a, const Nfa& b) { return included(a, b) && included(b, a); }

std::vector<std::vector<Cube>> all_words(std::size_t width, std::size_t max_len)
{
    const TrackMask all = (TrackMask{1} << width) - 1;
    std::vector<std::vector<Cube>> out{{}};
    std::vector<std::vector<Cube>> layer{{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<Cube>> next;
        for (const auto& w : layer)
            for (TrackMask v = 0; v <= all; ++v) {
                auto x = w;
                x.emplace_back(all, v);
                next.push_back(std::move(x));
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

bool eval_word(const Formula& f, std::span<const Cube> word)
{
    Assignment a(64, 0);
    for (std::size_t i = 0; i < word.size(); ++i)
        for (Track t = 0; t < 64; ++t)
            if (word[i].track(t) == 1)
                a[t] |= 1U << i;
    if (!is_quantifier_free(f))
        throw std::invalid_argument("eval_word: quantified formula");
    return eval_bounded(f, a);
}

} // namespace wsone::testing
