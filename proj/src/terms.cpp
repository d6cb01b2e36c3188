#include "wsone/terms.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace wsone {

const char* to_string(TermKind k)
{
    switch (k) {
    case TermKind::Leaf: return "Leaf";
    case TermKind::Union: return "Union";
    case TermKind::Inter: return "Inter";
    case TermKind::Compl: return "Compl";
    case TermKind::Proj: return "Proj";
    case TermKind::Set: return "Set";
    case TermKind::Star: return "Star";
    case TermKind::Pending: return "Pending";
    }
    return "?";
}

namespace {

std::uint64_t pair_key(TermId a, TermId b) { return (std::uint64_t{a} << 32) | b; }

std::size_t mix(std::size_t h, std::size_t v) { return (h ^ v) * 0x100000001b3ULL + 0x9e3779b9U; }

class ScopedCount {
public:
    explicit ScopedCount(std::size_t& c) : c_(c) { ++c_; }
    ~ScopedCount() { --c_; }
    ScopedCount(const ScopedCount&) = delete;
    ScopedCount& operator=(const ScopedCount&) = delete;

private:
    std::size_t& c_;
};

} // namespace

std::size_t TermContext::NodeHash::operator()(const TermNode& n) const noexcept
{
    std::size_t h = static_cast<std::size_t>(n.kind);
    h = mix(h, n.automaton);
    h = mix(h, n.finals.hash());
    for (TermId k : n.kids)
        h = mix(h, k);
    h = mix(h, n.mask);
    for (const auto& c : n.symbols)
        h = mix(h, std::hash<Cube>{}(c));
    return h;
}

std::size_t TermContext::PairHash::operator()(const std::pair<TermId, Cube>& p) const noexcept
{
    return mix(p.first, std::hash<Cube>{}(p.second));
}

TermContext::TermContext(Universe universe, TermOptions options)
    : universe_(std::move(universe)), options_(options)
{}

// ---------------------------------------------------------------------------
// Construction

std::uint32_t TermContext::add_automaton(Nfa a)
{
    stats_.leaf_states += a.num_states();
    StateSet seen(a.num_states());
    std::vector<State> work;
    a.initial().for_each([&](State q) {
        seen.insert(q);
        work.push_back(q);
    });
    while (!work.empty()) {
        const State q = work.back();
        work.pop_back();
        for (const Edge& e : a.out(q))
            if (!seen.contains(e.other)) {
                seen.insert(e.other);
                work.push_back(e.other);
            }
    }
    reachable_.push_back(std::move(seen));
    automata_.push_back(std::move(a));
    return static_cast<std::uint32_t>(automata_.size() - 1);
}

TermId TermContext::intern(TermNode node)
{
    if (auto it = ids_.find(node); it != ids_.end())
        return it->second;

    TrackMask rel = 0;
    switch (node.kind) {
    case TermKind::Leaf: rel = automata_.at(node.automaton).read_tracks(); break;
    case TermKind::Proj: rel = relevant_.at(node.kids.at(0)) & ~node.mask; break;
    default:
        for (TermId k : node.kids)
            rel |= relevant_.at(k);
        break;
    }

    const auto id = static_cast<TermId>(nodes_.size());
    nodes_.push_back(node);
    relevant_.push_back(rel);
    ids_.emplace(std::move(node), id);
    ++stats_.terms_interned;
    return id;
}

TermId TermContext::leaf(std::uint32_t automaton, StateSet finals)
{
    TermNode n;
    n.kind = TermKind::Leaf;
    n.automaton = automaton;
    finals.resize(automata_.at(automaton).num_states());
    n.finals = std::move(finals);
    return intern(std::move(n));
}

TermId TermContext::leaf(std::uint32_t automaton) { return leaf(automaton, automata_.at(automaton).final()); }

TermId TermContext::unite(TermId l, TermId r)
{
    TermNode n;
    n.kind = TermKind::Union;
    n.kids = {l, r};
    return intern(std::move(n));
}

TermId TermContext::intersect(TermId l, TermId r)
{
    TermNode n;
    n.kind = TermKind::Inter;
    n.kids = {l, r};
    return intern(std::move(n));
}

TermId TermContext::complement(TermId t)
{
    TermNode n;
    n.kind = TermKind::Compl;
    n.kids = {t};
    return intern(std::move(n));
}

TermId TermContext::project(TrackMask vars, TermId t)
{
    TermNode n;
    n.kind = TermKind::Proj;
    n.mask = vars;
    n.kids = {t};
    return intern(std::move(n));
}

TermId TermContext::set(std::vector<TermId> elements)
{
    std::vector<TermId> flat;
    flat.reserve(elements.size());
    for (TermId e : elements) {
        if (nodes_.at(e).kind == TermKind::Set) {
            const auto& inner = nodes_[e].kids;
            flat.insert(flat.end(), inner.begin(), inner.end());
        } else {
            flat.push_back(e);
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    TermNode n;
    n.kind = TermKind::Set;
    n.kids = std::move(flat);
    return intern(std::move(n));
}

bool TermContext::is_empty_leaf(TermId t) const
{
    const TermNode& n = nodes_.at(t);
    return n.kind == TermKind::Leaf && !n.finals.intersects(reachable_.at(n.automaton));
}

TermId TermContext::set_without_empty(std::vector<TermId> parts)
{
    std::vector<TermId> kept;
    for (TermId p : parts)
        if (!is_empty_leaf(p))
            kept.push_back(p);
    if (kept.empty())
        return parts.empty() ? set({}) : parts.front();
    return kept.size() == 1 ? kept.front() : set(std::move(kept));
}

TermId TermContext::star(TermId initial_set, Cube symbols)
{
    if (nodes_.at(initial_set).kind != TermKind::Set)
        initial_set = set({initial_set});
    TermNode n;
    n.kind = TermKind::Star;
    n.kids = {initial_set};
    n.symbols = {symbols};
    const std::size_t before = nodes_.size();
    const TermId id = intern(std::move(n));
    if (nodes_.size() != before) {
        FixpointState fs;
        fs.node = id;
        fs.symbols = symbols;
        fs.base = nodes_[initial_set].kids;
        fs.frontier = fs.base;
        fixpoint_index_.emplace(id, fixpoints_.size());
        fixpoints_.push_back(std::move(fs));
        star_order_.push_back(id);
    }
    return id;
}

TermId TermContext::build(const Formula& f, std::span<const Nfa> lowered)
{
    switch (f.kind) {
    case Formula::Kind::Sub:
    case Formula::Kind::Sing:
    case Formula::Kind::IsZero:
    case Formula::Kind::Succ: {
        std::string key = std::to_string(static_cast<int>(f.kind));
        for (Track v : f.vars)
            key += "," + std::to_string(v);
        auto it = atom_automata_.find(key);
        if (it == atom_automata_.end())
            it = atom_automata_.emplace(key, add_automaton(atom_automaton(f, width()))).first;
        return leaf(it->second);
    }
    case Formula::Kind::Automaton: {
        const std::string key = "lowered," + std::to_string(f.automaton);
        auto it = atom_automata_.find(key);
        if (it == atom_automata_.end())
            it = atom_automata_.emplace(key, add_automaton(lowered[f.automaton])).first;
        return leaf(it->second);
    }
    case Formula::Kind::And: return intersect(build(f.child(0), lowered), build(f.child(1), lowered));
    case Formula::Kind::Or: return unite(build(f.child(0), lowered), build(f.child(1), lowered));
    case Formula::Kind::Not: return complement(build(f.child(0), lowered));
    case Formula::Kind::Exists: {
        TrackMask vars = 0;
        for (Track v : f.vars)
            vars |= track_bit(v);
        const TermId body = build(f.child(0), lowered);
        const Cube symbols(universe_.all_tracks() & ~vars, 0);
        const TermId s = star(set({body}), symbols);
        trace("11", s, "S=" + render(symbols, universe_));
        return project(vars, s);
    }
    }
    throw std::logic_error("build: unknown formula kind");
}

// ---------------------------------------------------------------------------
// Fixpoint bookkeeping

FixpointState& TermContext::fixpoint_mut(TermId star_node)
{
    return fixpoints_.at(fixpoint_index_.at(star_node));
}

const FixpointState& TermContext::fixpoint(TermId star_node) const
{
    return fixpoints_.at(fixpoint_index_.at(star_node));
}

TermId TermContext::star_of(TermId t) const
{
    return nodes_.at(t).kind == TermKind::Pending ? nodes_[t].kids[0] : t;
}

bool TermContext::is_saturated(TermId t) const { return fixpoint(star_of(t)).saturated; }

bool TermContext::eliminating() const
{
    return options_.subsumption == SubsumptionMode::Eliminate || force_eliminate_ > 0;
}

void TermContext::check_deadline() const
{
    if (options_.deadline && std::chrono::steady_clock::now() > *options_.deadline)
        throw BudgetExceeded("time budget exhausted");
}

void TermContext::trace(const char* rule, TermId node, const std::string& detail) const
{
    if (!options_.trace)
        return;
    *options_.trace << "RULE(" << rule << ") node=" << node;
    if (!detail.empty())
        *options_.trace << ' ' << detail;
    *options_.trace << '\n';
}

std::vector<TermId> TermContext::published_elements(TermId star_node) const
{
    const auto& fs = fixpoint(star_node);
    std::vector<TermId> out = fs.base;
    if (fs.expanded)
        out.insert(out.end(), fs.candidates.begin(), fs.candidates.end());
    return out;
}

void TermContext::expand(FixpointState& fs)
{
    check_deadline();
    const std::vector<TermId> sources = options_.incremental_frontier ? fs.frontier : fs.base;
    std::vector<TermId> out;
    std::unordered_set<TermId> seen;
    const auto add = [&](TermId r) {
        if (seen.insert(r).second)
            out.push_back(r);
    };
    for (TermId t : sources) {
        const TrackMask open = ~fs.symbols.care() & relevant(t) & universe_.all_tracks();
        auto syms = enumerate_tracks(fs.symbols, open);
        if (options_.reverse_symbol_order)
            std::reverse(syms.begin(), syms.end());
        for (const Cube& sym : syms) {
            const TermId r = quot(t, sym);
            if (nodes_[r].kind == TermKind::Set) {
                for (TermId e : nodes_[r].kids)
                    add(e);
            } else {
                add(r);
            }
        }
    }
    fs.candidates = std::move(out);
    fs.expanded = true;
    trace("12", fs.node, "expand candidates=" + std::to_string(fs.candidates.size()));
}

StepResult TermContext::integrate(FixpointState& fs)
{
    std::optional<ScopedCount> forced;
    if (options_.subsumption == SubsumptionMode::Cheap && fs.rounds >= options_.cheap_round_limit)
        forced.emplace(force_eliminate_);

    std::vector<TermId> added;
    for (TermId c : fs.candidates) {
        if (std::find(fs.base.begin(), fs.base.end(), c) != fs.base.end())
            continue;
        bool covered = false;
        for (std::size_t i = 0; i < fs.base.size() && !covered; ++i)
            covered = subsumes(c, fs.base[i]);
        if (covered)
            continue;
        if (options_.prune) {
            std::vector<TermId> keep;
            keep.reserve(fs.base.size() + 1);
            for (TermId b : fs.base) {
                if (subsumes(b, c)) {
                    ++stats_.pruned;
                    trace("24", fs.node, "drop=" + std::to_string(b) + " by=" + std::to_string(c));
                    std::erase(added, b);
                } else {
                    keep.push_back(b);
                }
            }
            fs.base = std::move(keep);
        }
        fs.base.push_back(c);
        added.push_back(c);
    }
    fs.candidates.clear();
    fs.expanded = false;
    fs.frontier = std::move(added);
    fs.published.reset();
    ++fs.rounds;
    ++stats_.fixpoint_iterations;
    fs.base_sizes.push_back(fs.base.size());
    if (fs.rounds > options_.iteration_budget)
        throw BudgetExceeded("star fixpoint exceeded the iteration budget of " +
                             std::to_string(options_.iteration_budget));
    if (fs.frontier.empty()) {
        fs.saturated = true;
        ++stats_.saturated_fixpoints;
        trace("12", fs.node, "saturated base=" + std::to_string(fs.base.size()));
        return StepResult::Saturated;
    }
    trace("25", fs.node, "publish base=" + std::to_string(fs.base.size()));
    return StepResult::Progress;
}

StepResult TermContext::star_step(TermId star_node)
{
    auto& fs = fixpoint_mut(star_node);
    if (fs.saturated)
        return StepResult::Saturated;
    if (!fs.expanded)
        expand(fs);
    return integrate(fixpoint_mut(star_node));
}

void TermContext::advance(TermId star_node)
{
    auto& fs = fixpoint_mut(star_node);
    if (fs.saturated)
        return;
    if (!fs.expanded)
        expand(fs);
    else
        integrate(fs);
}

void TermContext::saturate(TermId star_node)
{
    while (star_step(star_node) != StepResult::Saturated) {
    }
}

void TermContext::saturate_all()
{
    for (TermId s : star_order_)
        saturate(s);
}

TermId TermContext::exact(TermId t)
{
    const TermId s = star_of(t);
    saturate(s);
    auto& fs = fixpoint_mut(s);
    if (!fs.published)
        fs.published = set(fs.base);
    if (t == s)
        return *fixpoint(s).published;

    if (auto r = pending_[t].resolved)
        return *r;
    const std::vector<TermId> base = fixpoint(s).base;
    const std::vector<Cube> word = nodes_[t].symbols;
    std::vector<TermId> parts;
    for (TermId u : base)
        parts.push_back(quot_word(u, word));
    const TermId r = set(std::move(parts));
    pending_[t].resolved = r;
    trace("30", t, "resolved=" + std::to_string(r));
    return r;
}

// ---------------------------------------------------------------------------
// Quotients

TermId TermContext::quot_word(TermId t, std::span<const Cube> word)
{
    for (const auto& c : word)
        t = quot(t, c);
    return t;
}

TermId TermContext::quot(TermId t, const Cube& c_in)
{
    const TrackMask rel = relevant(t);
    const Cube c(c_in.care() & rel, c_in.value() & rel);
    if (auto it = quot_cache_.find({t, c}); it != quot_cache_.end()) {
        ++stats_.cache_hits;
        return it->second;
    }
    ++stats_.quotients;

    const TermNode n = nodes_.at(t);
    TermId r = 0;
    switch (n.kind) {
    case TermKind::Leaf:
        r = leaf(n.automaton, pre(automata_[n.automaton], n.finals, c));
        trace("17", t, "-> " + std::to_string(r));
        break;
    case TermKind::Union: {
        const TermId l = quot(n.kids[0], c);
        const TermId rt = quot(n.kids[1], c);
        r = is_empty_leaf(l) ? rt : is_empty_leaf(rt) ? l : unite(l, rt);
        trace("13", t, "-> " + std::to_string(r));
        break;
    }
    case TermKind::Set: {
        std::vector<TermId> parts;
        for (TermId e : n.kids)
            parts.push_back(quot(e, c));
        r = set_without_empty(std::move(parts));
        break;
    }
    case TermKind::Proj: {
        const TermId k = quot(n.kids[0], wsone::project(c, n.mask));
        r = is_empty_leaf(k) ? k : project(n.mask, k);
        trace("16", t, "-> " + std::to_string(r));
        break;
    }
    case TermKind::Inter:
    case TermKind::Compl: {
        TrackMask open = rel & ~c.care();
        if (n.kind == TermKind::Inter)
            open &= relevant(n.kids[0]) & relevant(n.kids[1]);
        if (open != 0) {
            // Not distributive over a symbol set: split on the tracks both
            // sides read (all tracks for a complement).
            std::vector<TermId> parts;
            for (const Cube& sym : enumerate_tracks(c, open))
                parts.push_back(quot(t, sym));
            r = set_without_empty(std::move(parts));
        } else if (n.kind == TermKind::Inter) {
            // An empty side absorbs the other, which is then never built.
            const TermId l = quot(n.kids[0], c);
            if (is_empty_leaf(l)) {
                r = l;
            } else {
                const TermId rt = quot(n.kids[1], c);
                r = is_empty_leaf(rt) ? rt : intersect(l, rt);
            }
            trace("14", t, "-> " + std::to_string(r));
        } else {
            r = complement(quot(n.kids[0], c));
            trace("15", t, "-> " + std::to_string(r));
        }
        break;
    }
    case TermKind::Star:
    case TermKind::Pending: {
        if (is_saturated(t)) {
            r = quot(exact(t), c);
            break;
        }
        TermNode p;
        p.kind = TermKind::Pending;
        p.kids = {star_of(t)};
        if (n.kind == TermKind::Pending)
            p.symbols = n.symbols;
        p.symbols.push_back(c);
        r = intern(std::move(p));
        trace("29", t, "-> " + std::to_string(r));
        break;
    }
    }
    quot_cache_.emplace(std::make_pair(t, c), r);
    return r;
}

// ---------------------------------------------------------------------------
// ε-membership

bool TermContext::eps_mem(TermId t)
{
    if (auto it = eps_cache_.find(t); it != eps_cache_.end()) {
        ++stats_.cache_hits;
        return it->second;
    }
    ++stats_.eps_tests;
    const TermNode& n = nodes_.at(t);
    bool r = false;
    switch (n.kind) {
    case TermKind::Leaf:
        r = automata_[n.automaton].initial().intersects(n.finals);
        trace("10", t, r ? "true" : "false");
        break;
    case TermKind::Union: {
        const TermId l = n.kids[0];
        const TermId rt = n.kids[1];
        r = eps_mem(l) || eps_mem(rt);
        trace("6", t, r ? "true" : "false");
        break;
    }
    case TermKind::Inter: {
        const TermId l = n.kids[0];
        const TermId rt = n.kids[1];
        r = eps_mem(l) && eps_mem(rt);
        trace("7", t, r ? "true" : "false");
        break;
    }
    case TermKind::Compl: {
        const TermId k = n.kids[0];
        r = !eps_mem(k);
        trace("8", t, r ? "true" : "false");
        break;
    }
    case TermKind::Proj: {
        const TermId k = n.kids[0];
        r = eps_mem(k);
        trace("9", t, r ? "true" : "false");
        break;
    }
    case TermKind::Set: {
        const std::vector<TermId> kids = n.kids;
        for (TermId e : kids)
            if (eps_mem(e)) {
                r = true;
                break;
            }
        trace("5", t, r ? "true" : "false");
        break;
    }
    case TermKind::Star: r = eps_star(t); break;
    case TermKind::Pending: r = eps_pending(t); break;
    }
    eps_cache_[t] = r;
    return r;
}

bool TermContext::eps_star(TermId t)
{
    for (;;) {
        // Base elements first, then the candidates of the next round: both
        // under-approximate the star's language.
        for (TermId e : published_elements(t)) {
            if (!eps_mem(e))
                continue;
            auto& fs = fixpoint_mut(t);
            if (!fs.saturated) {
                fs.early_true = true;
                ++stats_.early_terminated_fixpoints;
                trace("26", t, "approximation contains eps, round=" + std::to_string(fs.rounds));
            }
            return true;
        }
        if (fixpoint(t).saturated)
            return false;
        advance(t);
    }
}

void TermContext::refresh_pending(TermId t)
{
    const TermId s = star_of(t);
    const std::vector<Cube> word = nodes_[t].symbols;
    for (TermId u : published_elements(s)) {
        if (pending_[t].processed.contains(u))
            continue;
        pending_[t].processed.insert(u);
        const TermId r = quot_word(u, word);
        auto& approx = pending_[t].approx;
        if (nodes_[r].kind == TermKind::Set)
            approx.insert(approx.end(), nodes_[r].kids.begin(), nodes_[r].kids.end());
        else
            approx.push_back(r);
    }
}

bool TermContext::eps_pending(TermId t)
{
    const TermId s = star_of(t);
    std::size_t tested = 0;
    for (;;) {
        if (is_saturated(t))
            return eps_mem(exact(t));
        refresh_pending(t);
        for (; tested < pending_[t].approx.size(); ++tested) {
            if (!eps_mem(pending_[t].approx[tested]))
                continue;
            if (!is_saturated(t)) {
                auto& fs = fixpoint_mut(s);
                fs.early_true = true;
                ++stats_.early_terminated_fixpoints;
                trace("26", t, "approximation contains eps, star=" + std::to_string(s) +
                                   " round=" + std::to_string(fs.rounds));
            }
            return true;
        }
        advance(s);
    }
}

// ---------------------------------------------------------------------------
// Subsumption

bool TermContext::subsumes(TermId t, TermId u)
{
    bool exact_answer = true;
    return check_subsumes(t, u, exact_answer);
}

bool TermContext::check_subsumes(TermId t, TermId u, bool& exact_answer)
{
    ++stats_.subsumption_tests;
    if (t == u)
        return true;
    const std::uint64_t key = pair_key(t, u);
    if (subsumed_.contains(key)) {
        ++stats_.cache_hits;
        return true;
    }
    if (not_subsumed_.contains(key)) {
        ++stats_.cache_hits;
        return false;
    }
    bool local_exact = true;
    const bool r = subsumes_uncached(t, u, local_exact);
    if (r) {
        record_subsumed(t, u);
    } else if (local_exact) {
        not_subsumed_.insert(key);
    } else {
        exact_answer = false;
    }
    return r;
}

void TermContext::record_subsumed(TermId t, TermId u)
{
    if (options_.record_subsumptions)
        subsumption_log_.emplace_back(t, u);
    std::vector<TermId> lower{t};
    if (auto it = below_.find(t); it != below_.end())
        lower.insert(lower.end(), it->second.begin(), it->second.end());
    std::vector<TermId> upper{u};
    if (auto it = above_.find(u); it != above_.end())
        upper.insert(upper.end(), it->second.begin(), it->second.end());
    for (TermId x : lower)
        for (TermId y : upper) {
            if (x == y || !subsumed_.insert(pair_key(x, y)).second)
                continue;
            above_[x].push_back(y);
            below_[y].push_back(x);
        }
}

bool TermContext::subsumes_uncached(TermId t, TermId u, bool& exact_answer)
{
    const TermKind kt = nodes_.at(t).kind;
    const TermKind ku = nodes_.at(u).kind;
    const auto is_lazy = [](TermKind k) { return k == TermKind::Star || k == TermKind::Pending; };

    if (is_empty_leaf(t))
        return true;

    if (is_lazy(kt)) {
        if (is_saturated(t) || eliminating())
            return check_subsumes(exact(t), u, exact_answer);
        trace("27", t, "unfinished, negative against " + std::to_string(u));
        exact_answer = false;
        return false;
    }
    if (kt == TermKind::Set) {
        const std::vector<TermId> kids = nodes_[t].kids;
        for (TermId e : kids)
            if (!check_subsumes(e, u, exact_answer)) {
                trace("18", t, "not below " + std::to_string(u));
                return false;
            }
        return true;
    }
    if (is_lazy(ku)) {
        if (is_saturated(u))
            return check_subsumes(t, exact(u), exact_answer);
        std::vector<TermId> approx;
        if (ku == TermKind::Star) {
            approx = published_elements(u);
        } else {
            refresh_pending(u);
            approx = pending_[u].approx;
        }
        for (TermId e : approx)
            if (check_subsumes(t, e, exact_answer)) {
                trace("28", u, "approximation covers " + std::to_string(t));
                return true;
            }
        if (eliminating())
            return check_subsumes(t, exact(u), exact_answer);
        exact_answer = false;
        return false;
    }
    if (ku == TermKind::Set) {
        const std::vector<TermId> kids = nodes_[u].kids;
        for (TermId e : kids)
            if (check_subsumes(t, e, exact_answer))
                return true;
        return false;
    }
    if (kt != ku)
        return false;

    const TermNode& a = nodes_[t];
    const TermNode& b = nodes_[u];
    switch (kt) {
    case TermKind::Leaf: {
        const bool r = a.automaton == b.automaton && a.finals.subset_of(b.finals);
        trace("23", t, (r ? "below " : "not below ") + std::to_string(u));
        return r;
    }
    case TermKind::Union:
    case TermKind::Inter: {
        const TermId al = a.kids[0], ar = a.kids[1], bl = b.kids[0], br = b.kids[1];
        const bool r = check_subsumes(al, bl, exact_answer) && check_subsumes(ar, br, exact_answer);
        trace(kt == TermKind::Union ? "19" : "20", t, (r ? "below " : "not below ") + std::to_string(u));
        return r;
    }
    case TermKind::Compl: {
        const TermId ak = a.kids[0], bk = b.kids[0];
        const bool r = check_subsumes(bk, ak, exact_answer);
        trace("21", t, (r ? "below " : "not below ") + std::to_string(u));
        return r;
    }
    case TermKind::Proj: {
        if (a.mask != b.mask)
            return false;
        const TermId ak = a.kids[0], bk = b.kids[0];
        const bool r = check_subsumes(ak, bk, exact_answer);
        trace("22", t, (r ? "below " : "not below ") + std::to_string(u));
        return r;
    }
    default: return false;
    }
}

// ---------------------------------------------------------------------------

std::string TermContext::describe(TermId t) const
{
    const TermNode& n = nodes_.at(t);
    std::ostringstream os;
    os << to_string(n.kind);
    switch (n.kind) {
    case TermKind::Leaf: {
        os << "(aut" << n.automaton << ", {";
        bool first = true;
        n.finals.for_each([&](State q) {
            os << (first ? "" : ",") << q;
            first = false;
        });
        os << "})";
        break;
    }
    case TermKind::Proj: {
        os << "([";
        bool first = true;
        for (Track v = 0; v < universe_.size(); ++v)
            if (n.mask & track_bit(v)) {
                os << (first ? "" : ",") << universe_.name(v);
                first = false;
            }
        os << "], " << n.kids[0] << ")";
        break;
    }
    case TermKind::Star:
        os << "(" << n.kids[0] << ", S=" << render(n.symbols[0], universe_) << ")";
        break;
    case TermKind::Pending: {
        os << "(" << n.kids[0] << ", w=[";
        for (std::size_t i = 0; i < n.symbols.size(); ++i)
            os << (i ? "; " : "") << render(n.symbols[i], universe_);
        os << "])";
        break;
    }
    default: {
        os << "(";
        for (std::size_t i = 0; i < n.kids.size(); ++i)
            os << (i ? ", " : "") << n.kids[i];
        os << ")";
        break;
    }
    }
    return os.str();
}

} // namespace wsone
