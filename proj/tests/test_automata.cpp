#include "support.hpp"

#include "wsone/automata.hpp"
#include "wsone/solver.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace wsone;
using namespace wsone::testing;

namespace {

std::vector<Cube> word(std::initializer_list<const char*> syms)
{
    std::vector<Cube> w;
    for (const char* s : syms)
        w.push_back(parse_compact(s));
    return w;
}

Nfa universal(std::size_t width)
{
    Nfa a(width);
    const State q = a.add_state();
    a.set_initial(q);
    a.set_final(q);
    a.add_transition(q, Cube::full(), q);
    return a;
}

Nfa build(const char* text, std::size_t* width = nullptr)
{
    const Problem p = parse(text);
    if (width)
        *width = p.universe.size();
    std::size_t states = 0;
    return explicit_automaton(p.formula, p.universe.size(), states);
}

// Acceptance by explicit enumeration of runs.
bool accepts_by_paths(const Nfa& a, std::span<const Cube> w, State q, std::size_t i)
{
    if (i == w.size())
        return a.final().contains(q);
    for (const Edge& e : a.out(q))
        if (e.cube.intersects(w[i]) && accepts_by_paths(a, w, e.other, i + 1))
            return true;
    return false;
}

bool accepts_by_paths(const Nfa& a, std::span<const Cube> w)
{
    for (State q : a.initial().elements())
        if (accepts_by_paths(a, w, q, 0))
            return true;
    return false;
}

std::vector<Formula> atoms_over(std::size_t width)
{
    std::vector<Formula> out;
    for (Track x = 0; x < width; ++x) {
        out.push_back(Formula::sing(x));
        out.push_back(Formula::is_zero(x));
        for (Track y = 0; y < width; ++y) {
            out.push_back(Formula::sub(x, y));
            out.push_back(Formula::succ(x, y));
        }
    }
    return out;
}

// Corpus of quantifier-free formulae with their automata.
std::vector<std::pair<Formula, Nfa>> qf_corpus(std::size_t width, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Formula, Nfa>> out;
    const auto atoms = atoms_over(width);
    const auto pick_atom = [&] { return atoms[rng() % atoms.size()]; };
    for (int i = 0; i < count; ++i) {
        Formula f = pick_atom();
        for (int k = 0; k < 3; ++k) {
            switch (rng() % 3) {
            case 0: f = Formula::conj(f, pick_atom()); break;
            case 1: f = Formula::disj(f, pick_atom()); break;
            default: f = Formula::negate(f); break;
            }
        }
        std::size_t states = 0;
        out.emplace_back(f, explicit_automaton(f, width, states));
    }
    return out;
}

} // namespace

TEST_CASE("Sing automaton")
{
    const Nfa a = atom_automaton(Formula::sing(0), 1);
    CHECK(accepts(a, word({"1"})));
    CHECK(accepts(a, word({"0", "1", "0"})));
    CHECK_FALSE(accepts(a, {}));
    CHECK_FALSE(accepts(a, word({"1", "1"})));
    CHECK_FALSE(accepts_empty(a));
}

TEST_CASE("Sub automaton accepts the empty word")
{
    const Nfa a = atom_automaton(Formula::sub(0, 1), 2);
    CHECK(accepts_empty(a));
    CHECK(accepts(a, word({"11", "01", "00"})));
    CHECK_FALSE(accepts(a, word({"10"})));
}

TEST_CASE("successor automaton")
{
    // X = Y + 1 over (X, Y)
    const Nfa a = atom_automaton(Formula::succ(0, 1), 2);
    CHECK(accepts(a, word({"01", "10"})));
    CHECK(accepts(a, word({"01", "10", "00"})));
    CHECK_FALSE(accepts(a, {}));
    CHECK_FALSE(accepts(a, word({"10", "01"})));
    CHECK_FALSE(accepts(a, word({"01", "00", "10"})));
}

TEST_CASE("atom automata match the semantics on all short words")
{
    for (std::size_t width = 1; width <= 3; ++width) {
        const auto words = all_words(width, 3);
        for (const Formula& f : atoms_over(width)) {
            const Nfa a = atom_automaton(f, width);
            for (const auto& w : words)
                REQUIRE(accepts(a, w) == eval_word(f, w));
        }
    }
}

TEST_CASE("accepts agrees with run enumeration")
{
    const auto words = all_words(2, 3);
    for (const auto& [f, a] : qf_corpus(2, 40, 3)) {
        const Nfa nfa = project_vars(a, 0b01);
        for (const auto& w : words) {
            REQUIRE(accepts(a, w) == accepts_by_paths(a, w));
            REQUIRE(accepts(nfa, w) == accepts_by_paths(nfa, w));
        }
    }
}

TEST_CASE("pre on empty inputs")
{
    const Nfa a = atom_automaton(Formula::sing(0), 1);
    CHECK(pre(a, StateSet(a.num_states()), parse_compact("1")).empty());
    // No transition leaves the initial state's predecessors over X:1 into it.
    StateSet init = a.initial();
    init.resize(a.num_states());
    CHECK(pre(a, init, parse_compact("1")).empty());
}

TEST_CASE("pre of the Sing finals over X:1 is the state before the one")
{
    const Nfa a = atom_automaton(Formula::sing(0), 1);
    const StateSet p = pre(a, a.final(), parse_compact("1"));
    CHECK(p == a.initial());
    CHECK(accepts(with_final(a, p), {}));
}

TEST_CASE("pre matches word quotients")
{
    for (std::size_t width = 1; width <= 3; ++width) {
        const auto words = all_words(width, width == 3 ? 2 : 3);
        const auto syms = enumerate(Cube::full(), width);
        for (const auto& [f, a] : qf_corpus(width, 15, 100 + width)) {
            for (const Cube& s : syms) {
                const Nfa q = with_final(a, pre(a, a.final(), s));
                for (auto w : words) {
                    const bool lhs = accepts(q, w);
                    w.push_back(s);
                    REQUIRE(lhs == accepts(a, w));
                }
            }
        }
    }
}

TEST_CASE("product identities")
{
    const Nfa a = atom_automaton(Formula::sing(0), 2);
    const Nfa u = universal(2);
    CHECK(equivalent(product(a, u, BoolOp::And), a));
    CHECK(equivalent(product(a, a, BoolOp::Or), a));
    CHECK(equivalent(product(a, u, BoolOp::Or), u));
}

TEST_CASE("Sing and zero-set product accepts exactly X:1 then zeros")
{
    const Nfa a =
        product(atom_automaton(Formula::sing(0), 1), atom_automaton(Formula::is_zero(0), 1), BoolOp::And);
    for (const auto& w : all_words(1, 4)) {
        bool expected = !w.empty() && w[0].value() == 1;
        for (std::size_t i = 1; i < w.size(); ++i)
            expected = expected && w[i].value() == 0;
        REQUIRE(accepts(a, w) == expected);
    }
}

TEST_CASE("complement")
{
    CHECK(is_empty(determinize_complement(universal(2))));
    const Nfa sing = atom_automaton(Formula::sing(0), 1);
    const Nfa c = determinize_complement(sing);
    CHECK(is_deterministic(c));
    CHECK(is_complete(c));
    CHECK(accepts(c, {}));
    CHECK(accepts(c, word({"1", "1"})));
    CHECK_FALSE(accepts(c, word({"1"})));
    const Nfa cc = determinize_complement(c);
    for (const auto& w : all_words(1, 4))
        REQUIRE(accepts(cc, w) == accepts(sing, w));
}

TEST_CASE("boolean constructions match the semantics")
{
    for (std::size_t width = 1; width <= 3; ++width) {
        const auto words = all_words(width, 3);
        for (const auto& [f, a] : qf_corpus(width, 30, width)) {
            for (const auto& w : words)
                REQUIRE(accepts(a, w) == eval_word(f, w));
        }
    }
}

TEST_CASE("projection")
{
    const Nfa sing = atom_automaton(Formula::sing(0), 1);
    CHECK(equivalent(project_vars(sing, 0), sing));
    const Nfa p = project_vars(sing, 0b1);
    for (const auto& w : all_words(1, 3))
        REQUIRE(accepts(p, w) == !w.empty());

    const Nfa a = atom_automaton(Formula::succ(0, 1), 3);
    CHECK(equivalent(project_vars(project_vars(a, 0b001), 0b010), project_vars(a, 0b011)));
}

TEST_CASE("zero saturation adds the shorter encodings")
{
    // X = {0} & Y = X + 1 has the single model X={0}, Y={1}.
    std::size_t width = 0;
    const Nfa a = build("X = {0} & Y = X + 1", &width);
    REQUIRE(width == 2);
    const Nfa p = project_vars(a, 0b10);
    CHECK(accepts(p, word({"1?", "0?"})));
    CHECK_FALSE(accepts(p, word({"10"})));
    const Nfa s = saturate_zero(p);
    CHECK(accepts(s, word({"10"})));
    CHECK(accepts(s, word({"1?"})));
    CHECK(accepts(s, word({"10", "00"})));
    CHECK_FALSE(accepts(s, {}));
}

TEST_CASE("zero saturation fixpoints")
{
    const Nfa sub = atom_automaton(Formula::sub(0, 1), 2);
    CHECK(saturate_zero(sub).final() == sub.final());
    Nfa empty = with_final(sub, StateSet(sub.num_states()));
    CHECK(saturate_zero(empty).final().empty());
}

TEST_CASE("minimal Sing automaton has three states")
{
    const Nfa m = minimize(atom_automaton(Formula::sing(0), 1));
    CHECK(m.num_states() == 3);
    CHECK(is_deterministic(m));
    CHECK(is_complete(m));
    CHECK(minimize(m).num_states() == 3);
    CHECK(canonical_form(minimize(m)) == canonical_form(m));
}

TEST_CASE("minimization is idempotent and canonical")
{
    for (const auto& [f, a] : qf_corpus(2, 40, 9)) {
        const Nfa m = minimize(a);
        REQUIRE(equivalent(m, a));
        REQUIRE(minimize(m).num_states() == m.num_states());
        REQUIRE(minimize(product(a, a, BoolOp::Or)).num_states() == minimize(determinize(a)).num_states());
        // An equivalent formula yields an isomorphic minimal automaton.
        std::size_t states = 0;
        const Nfa twice = explicit_automaton(Formula::negate(Formula::negate(f)), 2, states);
        REQUIRE(canonical_form(minimize(twice)) == canonical_form(m));
    }
}

TEST_CASE("De Morgan gives isomorphic minimal automata")
{
    std::size_t w = 0;
    const Nfa a = minimize(build("Sing(X) & Sub(X, Y)", &w));
    const Nfa b = minimize(build("~(~Sing(X) | ~Sub(X, Y))"));
    CHECK(canonical_form(a) == canonical_form(b));
}

TEST_CASE("emptiness")
{
    Nfa a(1);
    const State q = a.add_state();
    a.set_initial(q);
    a.add_transition(q, Cube::full(), q);
    CHECK(is_empty(a));
    a.set_final(q);
    CHECK_FALSE(is_empty(a));
    CHECK(accepts_empty(a));
}

TEST_CASE("determinization budget")
{
    const Nfa a = build("Sing(X) & Sub(X, Y) & Y = X + 1 | Sing(Y)");
    CHECK_THROWS_AS(determinize(project_vars(a, 0b01), 1), BudgetExceeded);
}

TEST_CASE("dump and load round trip")
{
    const Nfa a = build("Sing(X) & Y = X + 1");
    std::ostringstream os;
    dump(os, a);
    const std::string text = os.str();
    CHECK(text.starts_with("states "));
    std::istringstream is(text);
    const Nfa b = load(is);
    CHECK(b.num_states() == a.num_states());
    CHECK(b.transitions() == a.transitions());
    CHECK(b.initial() == a.initial());
    CHECK(b.final() == a.final());
}
