#include "wsone/automata.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace wsone {

// ---------------------------------------------------------------------------
// StateSet

StateSet::StateSet(std::size_t capacity, std::initializer_list<State> states) : StateSet(capacity)
{
    for (State q : states)
        insert(q);
}

void StateSet::resize(std::size_t capacity)
{
    capacity_ = capacity;
    words_.resize((capacity + 63) / 64, 0);
}

bool StateSet::empty() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t StateSet::count() const
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool StateSet::intersects(const StateSet& o) const
{
    const std::size_t n = std::min(words_.size(), o.words_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (words_[i] & o.words_[i])
            return true;
    return false;
}

bool StateSet::subset_of(const StateSet& o) const
{
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const std::uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
        if (words_[i] & ~other)
            return false;
    }
    return true;
}

StateSet& StateSet::operator|=(const StateSet& o)
{
    if (o.words_.size() > words_.size())
        resize(o.capacity_);
    for (std::size_t i = 0; i < o.words_.size(); ++i)
        words_[i] |= o.words_[i];
    return *this;
}

std::vector<State> StateSet::elements() const
{
    std::vector<State> out;
    for_each([&](State q) { out.push_back(q); });
    return out;
}

std::size_t StateSet::hash() const
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : words_)
        h = (h ^ w) * 0x100000001b3ULL;
    return h;
}

// ---------------------------------------------------------------------------
// Nfa

State Nfa::add_state()
{
    out_.emplace_back();
    in_.emplace_back();
    initial_.resize(out_.size());
    final_.resize(out_.size());
    return static_cast<State>(out_.size() - 1);
}

void Nfa::add_states(std::size_t n)
{
    out_.resize(out_.size() + n);
    in_.resize(in_.size() + n);
    initial_.resize(out_.size());
    final_.resize(out_.size());
}

void Nfa::add_transition(State src, Cube cube, State dst)
{
    out_.at(src).push_back({cube, dst});
    in_.at(dst).push_back({cube, src});
    ++num_transitions_;
}

void Nfa::set_final(StateSet f)
{
    f.resize(num_states());
    final_ = std::move(f);
}

std::vector<Transition> Nfa::transitions() const
{
    std::vector<Transition> out;
    out.reserve(num_transitions_);
    for (State q = 0; q < out_.size(); ++q)
        for (const auto& e : out_[q])
            out.push_back({q, e.cube, e.other});
    return out;
}

TrackMask Nfa::read_tracks() const
{
    TrackMask m = 0;
    for (const auto& edges : out_)
        for (const auto& e : edges)
            m |= e.cube.care();
    return m;
}

// ---------------------------------------------------------------------------
// Atoms

namespace {

// Adds src --(tracks fixed as given)--> dst unless the assignment conflicts
// (the same track asked to be both 0 and 1).
void add_fixed(Nfa& a, State src, std::initializer_list<std::pair<Track, bool>> fixed, State dst)
{
    Cube c;
    for (auto [t, v] : fixed) {
        auto next = c.constrain(t, v);
        if (!next)
            return;
        c = *next;
    }
    a.add_transition(src, c, dst);
}

} // namespace

Nfa atom_automaton(const Formula& atom, std::size_t width)
{
    Nfa a(width);
    const auto& v = atom.vars;
    switch (atom.kind) {
    case Formula::Kind::Sub:
        a.add_state();
        a.set_initial(0);
        a.set_final(0);
        add_fixed(a, 0, {{v[0], false}}, 0);
        add_fixed(a, 0, {{v[0], true}, {v[1], true}}, 0);
        break;
    case Formula::Kind::Sing:
        a.add_states(2);
        a.set_initial(0);
        a.set_final(1);
        add_fixed(a, 0, {{v[0], false}}, 0);
        add_fixed(a, 0, {{v[0], true}}, 1);
        add_fixed(a, 1, {{v[0], false}}, 1);
        break;
    case Formula::Kind::IsZero:
        a.add_states(2);
        a.set_initial(0);
        a.set_final(1);
        add_fixed(a, 0, {{v[0], true}}, 1);
        add_fixed(a, 1, {{v[0], false}}, 1);
        break;
    case Formula::Kind::Succ:
        // vars[0] = vars[1] + 1: the 1 of vars[1] is directly followed by the
        // 1 of vars[0].
        a.add_states(3);
        a.set_initial(0);
        a.set_final(2);
        add_fixed(a, 0, {{v[0], false}, {v[1], false}}, 0);
        add_fixed(a, 0, {{v[0], false}, {v[1], true}}, 1);
        add_fixed(a, 1, {{v[0], true}, {v[1], false}}, 2);
        add_fixed(a, 2, {{v[0], false}, {v[1], false}}, 2);
        break;
    default: throw std::invalid_argument("atom_automaton: not an atomic formula");
    }
    return a;
}

// ---------------------------------------------------------------------------
// Pre / post

StateSet pre(const Nfa& a, const StateSet& targets, const Cube& c)
{
    StateSet out(a.num_states());
    targets.for_each([&](State q) {
        for (const auto& e : a.in(q))
            if (e.cube.intersects(c))
                out.insert(e.other);
    });
    return out;
}

StateSet post(const Nfa& a, const StateSet& sources, const Cube& c)
{
    StateSet out(a.num_states());
    sources.for_each([&](State q) {
        for (const auto& e : a.out(q))
            if (e.cube.intersects(c))
                out.insert(e.other);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Alphabet splitting

namespace {

// Partitions `region` into disjoint cubes such that every edge of `edges`
// either contains a part or is disjoint from it; calls emit(part, edges
// containing it) for each part. Splits on the lowest track first.
template <class Emit>
void split_region(const Cube& region, const std::vector<const Edge*>& edges, Emit&& emit)
{
    std::vector<const Edge*> active;
    TrackMask open = 0;
    for (const Edge* e : edges) {
        if (!e->cube.intersects(region))
            continue;
        active.push_back(e);
        open |= e->cube.care() & ~region.care();
    }
    if (open == 0) {
        emit(region, active);
        return;
    }
    const auto t = static_cast<Track>(std::countr_zero(open));
    split_region(region.with_track(t, false), active, emit);
    split_region(region.with_track(t, true), active, emit);
}

std::vector<const Edge*> edge_ptrs(const std::vector<Edge>& edges)
{
    std::vector<const Edge*> out;
    out.reserve(edges.size());
    for (const auto& e : edges)
        out.push_back(&e);
    return out;
}

void check_budget(std::size_t states, std::size_t budget)
{
    if (states > budget)
        throw BudgetExceeded("automaton construction exceeded the state budget of " +
                             std::to_string(budget));
}

} // namespace

Nfa complete(const Nfa& a)
{
    Nfa out(a.width());
    out.add_states(a.num_states());
    out.set_final(a.final());
    a.initial().for_each([&](State q) { out.set_initial(q); });
    if (a.initial().empty())
        out.set_initial(out.add_state());
    std::optional<State> sink;
    const std::size_t original = out.num_states();
    for (State q = 0; q < original; ++q) {
        if (q < a.num_states())
            for (const auto& e : a.out(q))
                out.add_transition(q, e.cube, e.other);
        const std::vector<Edge> edges = q < a.num_states() ? a.out(q) : std::vector<Edge>{};
        split_region(Cube::full(), edge_ptrs(edges), [&](const Cube& part, const auto& active) {
            if (!active.empty())
                return;
            if (!sink) {
                sink = out.add_state();
                out.add_transition(*sink, Cube::full(), *sink);
            }
            out.add_transition(q, part, *sink);
        });
    }
    return out;
}

bool is_complete(const Nfa& a)
{
    if (a.initial().empty())
        return false;
    for (State q = 0; q < a.num_states(); ++q) {
        bool covered = true;
        split_region(Cube::full(), edge_ptrs(a.out(q)), [&](const Cube&, const auto& active) {
            covered = covered && !active.empty();
        });
        if (!covered)
            return false;
    }
    return true;
}

bool is_deterministic(const Nfa& a)
{
    if (a.initial().count() != 1)
        return false;
    for (State q = 0; q < a.num_states(); ++q) {
        const auto& edges = a.out(q);
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j)
                if (edges[i].other != edges[j].other && edges[i].cube.intersects(edges[j].cube))
                    return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Product

Nfa product(const Nfa& a_in, const Nfa& b_in, BoolOp op, std::size_t budget)
{
    if (a_in.width() != b_in.width())
        throw std::invalid_argument("product: automata over different universes");
    // Union by pairs needs a successor on both sides for every symbol.
    const Nfa a = op == BoolOp::Or ? complete(a_in) : a_in;
    const Nfa b = op == BoolOp::Or ? complete(b_in) : b_in;

    Nfa out(a.width());
    std::map<std::pair<State, State>, State> ids;
    std::deque<std::pair<State, State>> work;
    const auto id_of = [&](State p, State q) {
        auto [it, fresh] = ids.try_emplace({p, q}, 0);
        if (fresh) {
            it->second = out.add_state();
            check_budget(out.num_states(), budget);
            const bool fa = a.final().contains(p);
            const bool fb = b.final().contains(q);
            if (op == BoolOp::And ? (fa && fb) : (fa || fb))
                out.set_final(it->second);
            work.emplace_back(p, q);
        }
        return it->second;
    };
    a.initial().for_each([&](State p) {
        b.initial().for_each([&](State q) { out.set_initial(id_of(p, q)); });
    });
    while (!work.empty()) {
        const auto [p, q] = work.front();
        work.pop_front();
        const State src = ids.at({p, q});
        for (const auto& ea : a.out(p))
            for (const auto& eb : b.out(q))
                if (ea.cube.intersects(eb.cube))
                    out.add_transition(src, ea.cube.meet(eb.cube), id_of(ea.other, eb.other));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subset construction

Nfa determinize(const Nfa& a, std::size_t budget)
{
    Nfa out(a.width());
    std::unordered_map<StateSet, State> ids;
    std::vector<StateSet> subsets;
    const auto id_of = [&](const StateSet& s) {
        auto [it, fresh] = ids.try_emplace(s, 0);
        if (fresh) {
            it->second = out.add_state();
            check_budget(out.num_states(), budget);
            subsets.push_back(s);
            if (s.intersects(a.final()))
                out.set_final(it->second);
        }
        return it->second;
    };
    StateSet init = a.initial();
    init.resize(a.num_states());
    out.set_initial(id_of(init));
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const StateSet cur = subsets[i];
        std::vector<const Edge*> edges;
        cur.for_each([&](State q) {
            for (const auto& e : a.out(q))
                edges.push_back(&e);
        });
        // Parts leading to the same subset are emitted as separate cubes.
        std::vector<std::pair<Cube, StateSet>> parts;
        split_region(Cube::full(), edges, [&](const Cube& part, const auto& active) {
            StateSet dst(a.num_states());
            for (const Edge* e : active)
                dst.insert(e->other);
            parts.emplace_back(part, std::move(dst));
        });
        for (auto& [cube, dst] : parts)
            out.add_transition(static_cast<State>(i), cube, id_of(dst));
    }
    return out;
}

Nfa determinize_complement(const Nfa& a, std::size_t budget)
{
    Nfa d = determinize(a, budget);
    StateSet flipped(d.num_states());
    for (State q = 0; q < d.num_states(); ++q)
        if (!d.final().contains(q))
            flipped.insert(q);
    d.set_final(std::move(flipped));
    return d;
}

// ---------------------------------------------------------------------------
// Projection and zero saturation

Nfa project_vars(const Nfa& a, TrackMask vars)
{
    Nfa out(a.width());
    out.add_states(a.num_states());
    a.initial().for_each([&](State q) { out.set_initial(q); });
    out.set_final(a.final());
    for (const auto& t : a.transitions())
        out.add_transition(t.src, project(t.cube, vars), t.dst);
    return out;
}

Nfa with_final(const Nfa& a, StateSet f)
{
    Nfa out = a;
    out.set_final(std::move(f));
    return out;
}

Nfa saturate_zero(const Nfa& a)
{
    const Cube zero(a.width() >= 64 ? ~TrackMask{0} : (TrackMask{1} << a.width()) - 1, 0);
    StateSet f = a.final();
    f.resize(a.num_states());
    for (;;) {
        StateSet next = f;
        next |= pre(a, f, zero);
        if (next == f)
            break;
        f = std::move(next);
    }
    return with_final(a, std::move(f));
}

Nfa trim(const Nfa& a)
{
    std::vector<State> ids(a.num_states(), ~State{0});
    std::vector<State> order;
    a.initial().for_each([&](State q) {
        ids[q] = static_cast<State>(order.size());
        order.push_back(q);
    });
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& e : a.out(order[i]))
            if (ids[e.other] == ~State{0}) {
                ids[e.other] = static_cast<State>(order.size());
                order.push_back(e.other);
            }
    Nfa out(a.width());
    out.add_states(order.size());
    for (State q : order) {
        if (a.initial().contains(q))
            out.set_initial(ids[q]);
        if (a.final().contains(q))
            out.set_final(ids[q]);
        for (const auto& e : a.out(q))
            out.add_transition(ids[q], e.cube, ids[e.other]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minimization

namespace {

// Hash-consed reduced ordered decision diagrams mapping symbols to
// equivalence classes; equal functions get equal node ids.
class ClassDiagrams {
public:
    explicit ClassDiagrams(std::size_t width) : width_(width) {}

    int build(const std::vector<Edge>& edges, const std::vector<std::size_t>& cls)
    {
        std::vector<const Edge*> active = edge_ptrs(edges);
        return build_rec(Cube::full(), 0, active, cls);
    }

private:
    int leaf(long c)
    {
        auto [it, fresh] = leaves_.try_emplace(c, static_cast<int>(next_id_));
        if (fresh)
            ++next_id_;
        return it->second;
    }

    int node(Track t, int lo, int hi)
    {
        if (lo == hi)
            return lo;
        auto [it, fresh] = nodes_.try_emplace({t, lo, hi}, static_cast<int>(next_id_));
        if (fresh)
            ++next_id_;
        return it->second;
    }

    int build_rec(const Cube& region, Track t, const std::vector<const Edge*>& edges,
                  const std::vector<std::size_t>& cls)
    {
        std::vector<const Edge*> active;
        for (const Edge* e : edges)
            if (e->cube.intersects(region))
                active.push_back(e);
        if (active.empty())
            return leaf(-1);
        const std::size_t first = cls[active.front()->other];
        if (std::all_of(active.begin(), active.end(),
                        [&](const Edge* e) { return cls[e->other] == first; }))
            return leaf(static_cast<long>(first));
        while (t < width_) {
            bool cares = false;
            for (const Edge* e : active)
                cares = cares || (e->cube.care() & track_bit(t));
            if (cares)
                break;
            ++t;
        }
        if (t >= width_)
            return leaf(static_cast<long>(first));
        const int lo = build_rec(region.with_track(t, false), t + 1, active, cls);
        const int hi = build_rec(region.with_track(t, true), t + 1, active, cls);
        return node(t, lo, hi);
    }

    std::size_t width_;
    std::size_t next_id_ = 0;
    std::map<long, int> leaves_;
    std::map<std::tuple<Track, int, int>, int> nodes_;
};

} // namespace

Nfa minimize(const Nfa& input, std::size_t budget)
{
    const Nfa a = (is_deterministic(input) && is_complete(input)) ? trim(input)
                                                                    : determinize(input, budget);
    const std::size_t n = a.num_states();
    std::vector<std::size_t> cls(n);
    std::size_t num_classes = 0;
    {
        std::map<bool, std::size_t> first;
        for (State q = 0; q < n; ++q) {
            auto [it, fresh] = first.try_emplace(a.final().contains(q), num_classes);
            if (fresh)
                ++num_classes;
            cls[q] = it->second;
        }
    }
    for (;;) {
        ClassDiagrams dd(a.width());
        std::map<std::pair<std::size_t, int>, std::size_t> sig;
        std::vector<std::size_t> next(n);
        for (State q = 0; q < n; ++q) {
            const auto key = std::make_pair(cls[q], dd.build(a.out(q), cls));
            auto [it, fresh] = sig.try_emplace(key, sig.size());
            next[q] = it->second;
        }
        const std::size_t count = sig.size();
        cls = std::move(next);
        if (count == num_classes)
            break;
        num_classes = count;
    }

    Nfa out(a.width());
    out.add_states(num_classes);
    std::vector<bool> done(num_classes, false);
    for (State q = 0; q < n; ++q) {
        const auto c = static_cast<State>(cls[q]);
        if (a.initial().contains(q))
            out.set_initial(c);
        if (a.final().contains(q))
            out.set_final(c);
        if (done[c])
            continue;
        done[c] = true;
        for (const auto& e : a.out(q))
            out.add_transition(c, e.cube, static_cast<State>(cls[e.other]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Queries

bool is_empty(const Nfa& a)
{
    StateSet seen = a.initial();
    seen.resize(a.num_states());
    std::vector<State> work = seen.elements();
    while (!work.empty()) {
        const State q = work.back();
        work.pop_back();
        if (a.final().contains(q))
            return false;
        for (const auto& e : a.out(q))
            if (!seen.contains(e.other)) {
                seen.insert(e.other);
                work.push_back(e.other);
            }
    }
    return true;
}

bool accepts(const Nfa& a, std::span<const Cube> word)
{
    StateSet cur = a.initial();
    cur.resize(a.num_states());
    for (const auto& sym : word)
        cur = post(a, cur, sym);
    return cur.intersects(a.final());
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string cube_token(const Cube& c, std::size_t width)
{
    return width == 0 ? "-" : render_compact(c, width);
}

} // namespace

void dump(std::ostream& os, const Nfa& a)
{
    os << "states " << a.num_states() << '\n';
    os << "initial";
    a.initial().for_each([&](State q) { os << ' ' << q; });
    os << "\nfinal";
    a.final().for_each([&](State q) { os << ' ' << q; });
    os << '\n';
    for (const auto& t : a.transitions())
        os << t.src << ' ' << cube_token(t.cube, a.width()) << ' ' << t.dst << '\n';
}

Nfa load(std::istream& is)
{
    std::string line;
    const auto header = [&](std::string_view key) {
        if (!std::getline(is, line))
            throw std::runtime_error("automaton file: missing '" + std::string(key) + "' line");
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word != key)
            throw std::runtime_error("automaton file: expected '" + std::string(key) + "', got '" +
                                     word + "'");
        std::vector<State> values;
        for (State v; ls >> v;)
            values.push_back(v);
        return values;
    };
    const auto states = header("states");
    if (states.size() != 1)
        throw std::runtime_error("automaton file: 'states' needs one count");
    const auto initial = header("initial");
    const auto finals = header("final");

    std::vector<Transition> trans;
    std::size_t width = 0;
    bool width_known = false;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        State src = 0;
        State dst = 0;
        std::string cube;
        if (!(ls >> src >> cube >> dst) || src >= states[0] || dst >= states[0])
            throw std::runtime_error("automaton file: bad transition line '" + line + "'");
        const std::size_t w = cube == "-" ? 0 : cube.size();
        if (width_known && w != width)
            throw std::runtime_error("automaton file: cubes of different widths");
        width = w;
        width_known = true;
        trans.push_back({src, cube == "-" ? Cube{} : parse_compact(cube), dst});
    }
    Nfa a(width);
    a.add_states(states[0]);
    for (State q : initial)
        a.set_initial(q);
    for (State q : finals)
        a.set_final(q);
    for (const auto& t : trans)
        a.add_transition(t.src, t.cube, t.dst);
    return a;
}

} // namespace wsone
