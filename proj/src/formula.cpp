#include "wsone/formula.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <numeric>

namespace wsone {

ParseError::ParseError(const std::string& msg, SourcePos p)
    : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + msg),
      pos(p)
{}

Formula Formula::atom(Kind k, std::vector<Track> v)
{
    Formula f;
    f.kind = k;
    f.vars = std::move(v);
    return f;
}

Formula Formula::conj(Formula l, Formula r)
{
    Formula f;
    f.kind = Kind::And;
    f.children = {std::move(l), std::move(r)};
    return f;
}

Formula Formula::disj(Formula l, Formula r)
{
    Formula f;
    f.kind = Kind::Or;
    f.children = {std::move(l), std::move(r)};
    return f;
}

Formula Formula::negate(Formula g)
{
    Formula f;
    f.kind = Kind::Not;
    f.children = {std::move(g)};
    return f;
}

Formula Formula::exists(std::vector<Track> vars, Formula body)
{
    Formula f;
    f.kind = Kind::Exists;
    f.vars = std::move(vars);
    f.children = {std::move(body)};
    return f;
}

Formula Formula::automaton_leaf(std::size_t index, std::vector<Track> tracks)
{
    Formula f;
    f.kind = Kind::Automaton;
    f.vars = std::move(tracks);
    f.automaton = index;
    return f;
}

bool Formula::operator==(const Formula& o) const
{
    return kind == o.kind && vars == o.vars && automaton == o.automaton &&
           children == o.children;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Number, LParen, RParen, LBrace, RBrace, Comma, Colon, And, Or, Not, Eq, Plus, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            const SourcePos start{line_, col_};
            if (at_ >= text_.size()) {
                out.push_back({Tok::End, "", start});
                return out;
            }
            const char c = text_[at_];
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string id;
                while (at_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[at_])) || text_[at_] == '_'))
                    id += advance();
                out.push_back({Tok::Ident, std::move(id), start});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string num;
                while (at_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[at_])))
                    num += advance();
                out.push_back({Tok::Number, std::move(num), start});
                continue;
            }
            Tok k;
            switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case ',': k = Tok::Comma; break;
            case ':': k = Tok::Colon; break;
            case '&': k = Tok::And; break;
            case '|': k = Tok::Or; break;
            case '~': k = Tok::Not; break;
            case '=': k = Tok::Eq; break;
            case '+': k = Tok::Plus; break;
            default: throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
            }
            out.push_back({k, std::string(1, advance()), start});
        }
    }

private:
    char advance()
    {
        const char c = text_[at_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space()
    {
        while (at_ < text_.size()) {
            const char c = text_[at_];
            if (c == '#') {
                while (at_ < text_.size() && text_[at_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    std::string_view text_;
    std::size_t at_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

bool is_keyword(std::string_view s) { return s == "ex2" || s == "Sing" || s == "Sub"; }

class Parser {
public:
    Parser(std::vector<Token> toks, Universe& u) : toks_(std::move(toks)), universe_(u) {}

    Formula parse_all()
    {
        Formula f = parse_or();
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "' after formula");
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        return toks_[std::min(at_ + ahead, toks_.size() - 1)];
    }
    const Token& next() { return toks_[std::min(at_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

    const Token& expect(Tok k, std::string_view what)
    {
        if (peek().kind != k)
            fail("expected " + std::string(what) +
                 (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"));
        return next();
    }

    Track variable()
    {
        const Token& t = peek();
        if (t.kind != Tok::Ident)
            fail("expected a variable");
        if (is_keyword(t.text))
            fail("'" + t.text + "' is a keyword, not a variable");
        next();
        return universe_.intern(t.text);
    }

    Formula parse_or()
    {
        Formula f = parse_and();
        while (peek().kind == Tok::Or) {
            next();
            f = Formula::disj(std::move(f), parse_and());
        }
        return f;
    }

    Formula parse_and()
    {
        Formula f = parse_unary();
        while (peek().kind == Tok::And) {
            next();
            f = Formula::conj(std::move(f), parse_unary());
        }
        return f;
    }

    Formula parse_unary()
    {
        const SourcePos pos = peek().pos;
        if (peek().kind == Tok::Not) {
            next();
            Formula f = Formula::negate(parse_unary());
            f.pos = pos;
            return f;
        }
        if (peek().kind == Tok::Ident && peek().text == "ex2") {
            next();
            std::vector<Track> vars{variable()};
            while (peek().kind == Tok::Comma) {
                next();
                vars.push_back(variable());
            }
            expect(Tok::Colon, "':' after quantified variables");
            Formula f = Formula::exists(std::move(vars), parse_or());
            f.pos = pos;
            return f;
        }
        return parse_primary();
    }

    Formula parse_primary()
    {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            next();
            Formula f = parse_or();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind != Tok::Ident)
            fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");

        const SourcePos pos = t.pos;
        Formula f;
        if (t.text == "Sing") {
            next();
            expect(Tok::LParen, "'(' after Sing");
            f = Formula::sing(variable());
            expect(Tok::RParen, "')'");
        } else if (t.text == "Sub") {
            next();
            expect(Tok::LParen, "'(' after Sub");
            const Track x = variable();
            expect(Tok::Comma, "','");
            const Track y = variable();
            expect(Tok::RParen, "')'");
            f = Formula::sub(x, y);
        } else if (peek(1).kind == Tok::LParen) {
            fail("unknown identifier '" + t.text + "'");
        } else {
            const Track x = variable();
            expect(Tok::Eq, "'=' in an equation atom");
            if (peek().kind == Tok::LBrace) {
                next();
                const Token& zero = expect(Tok::Number, "'0'");
                if (zero.text != "0")
                    throw ParseError("only {0} is supported as a set constant", zero.pos);
                expect(Tok::RBrace, "'}'");
                f = Formula::is_zero(x);
            } else {
                const Track y = variable();
                expect(Tok::Plus, "'+'");
                const Token& one = expect(Tok::Number, "'1'");
                if (one.text != "1")
                    throw ParseError("only '+ 1' is supported", one.pos);
                f = Formula::succ(x, y);
            }
        }
        f.pos = pos;
        return f;
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
    Universe& universe_;
};

} // namespace

Problem parse(std::string_view text)
{
    Problem p;
    p.formula = Parser(Lexer(text).run(), p.universe).parse_all();
    return p;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Formula& f)
{
    switch (f.kind) {
    case Formula::Kind::Exists: return 0;
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    case Formula::Kind::Not: return 3;
    default: return 4;
    }
}

void print_into(std::string& out, const Formula& f, const Universe& u, int ctx)
{
    const int prec = precedence(f);
    const bool parens = prec < ctx;
    if (parens)
        out += '(';
    const auto var = [&](std::size_t i) -> const std::string& { return u.name(f.vars[i]); };
    switch (f.kind) {
    case Formula::Kind::Sub: out += "Sub(" + var(0) + "," + var(1) + ")"; break;
    case Formula::Kind::Sing: out += "Sing(" + var(0) + ")"; break;
    case Formula::Kind::IsZero: out += var(0) + " = {0}"; break;
    case Formula::Kind::Succ: out += var(0) + " = " + var(1) + " + 1"; break;
    case Formula::Kind::Automaton: out += "@aut" + std::to_string(f.automaton); break;
    case Formula::Kind::Not:
        out += '~';
        print_into(out, f.child(0), u, 3);
        break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
        print_into(out, f.child(0), u, prec);
        out += f.kind == Formula::Kind::And ? " & " : " | ";
        print_into(out, f.child(1), u, prec + 1);
        break;
    case Formula::Kind::Exists:
        out += "ex2 ";
        for (std::size_t i = 0; i < f.vars.size(); ++i) {
            if (i)
                out += ',';
            out += var(i);
        }
        out += ": ";
        print_into(out, f.child(0), u, 0);
        break;
    }
    if (parens)
        out += ')';
}

} // namespace

std::string print(const Formula& f, const Universe& u)
{
    std::string out;
    print_into(out, f, u, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Variable queries

namespace {

TrackMask mask_of(const std::vector<Track>& vars)
{
    TrackMask m = 0;
    for (Track t : vars)
        m |= track_bit(t);
    return m;
}

} // namespace

TrackMask free_vars(const Formula& f)
{
    if (f.is_atom() || f.kind == Formula::Kind::Automaton)
        return mask_of(f.vars);
    TrackMask m = 0;
    for (const auto& c : f.children)
        m |= free_vars(c);
    if (f.kind == Formula::Kind::Exists)
        m &= ~mask_of(f.vars);
    return m;
}

TrackMask all_vars(const Formula& f)
{
    TrackMask m = mask_of(f.vars);
    for (const auto& c : f.children)
        m |= all_vars(c);
    return m;
}

bool is_ground(const Formula& f) { return free_vars(f) == 0; }

bool is_quantifier_free(const Formula& f)
{
    if (f.kind == Formula::Kind::Exists)
        return false;
    return std::all_of(f.children.begin(), f.children.end(),
                       [](const Formula& c) { return is_quantifier_free(c); });
}

std::size_t quantifier_depth(const Formula& f)
{
    std::size_t below = 0;
    for (const auto& c : f.children)
        below = std::max(below, quantifier_depth(c));
    return below + (f.kind == Formula::Kind::Exists ? f.vars.size() : 0);
}

std::size_t ast_depth(const Formula& f)
{
    std::size_t below = 0;
    for (const auto& c : f.children)
        below = std::max(below, ast_depth(c));
    return below + 1;
}

// ---------------------------------------------------------------------------
// Alpha renaming and closure

namespace {

Formula rename_rec(const Formula& f, std::map<Track, Track> subst, TrackMask& used, Universe& u)
{
    Formula out = f;
    if (f.kind == Formula::Kind::Exists) {
        for (Track& v : out.vars) {
            if (used & track_bit(v)) {
                const Track fresh = u.intern(u.fresh_name(u.name(v)));
                subst[v] = fresh;
                v = fresh;
            } else {
                subst.erase(v);
            }
            used |= track_bit(v);
        }
        out.children[0] = rename_rec(f.child(0), subst, used, u);
        return out;
    }
    for (Track& v : out.vars)
        if (auto it = subst.find(v); it != subst.end())
            v = it->second;
    for (auto& c : out.children)
        c = rename_rec(c, subst, used, u);
    return out;
}

} // namespace

Problem alpha_rename(const Problem& p)
{
    Problem out{p.universe, {}};
    TrackMask used = free_vars(p.formula);
    out.formula = rename_rec(p.formula, {}, used, out.universe);
    return out;
}

Problem existential_closure(const Problem& p)
{
    const TrackMask fv = free_vars(p.formula);
    if (fv == 0)
        return p;
    std::vector<Track> vars;
    for (TrackMask m = fv; m; m &= m - 1)
        vars.push_back(static_cast<Track>(std::countr_zero(m)));
    return {p.universe, Formula::exists(std::move(vars), p.formula)};
}

Problem compact_universe(const Problem& p)
{
    const TrackMask used = all_vars(p.formula);
    std::vector<Track> remap(p.universe.size(), 0);
    Universe u;
    for (Track t = 0; t < p.universe.size(); ++t)
        if (used & track_bit(t))
            remap[t] = u.intern(p.universe.name(t));

    struct Rewriter {
        const std::vector<Track>& remap;
        Formula operator()(const Formula& f) const
        {
            Formula out = f;
            for (Track& v : out.vars)
                v = remap[v];
            for (auto& c : out.children)
                c = (*this)(c);
            return out;
        }
    };
    return {std::move(u), Rewriter{remap}(p.formula)};
}

// ---------------------------------------------------------------------------
// Anti-prenexing

namespace {

Formula nnf(const Formula& f, bool negated)
{
    switch (f.kind) {
    case Formula::Kind::Not: return nnf(f.child(0), !negated);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        Formula l = nnf(f.child(0), negated);
        Formula r = nnf(f.child(1), negated);
        const bool is_and = (f.kind == Formula::Kind::And) != negated;
        return is_and ? Formula::conj(std::move(l), std::move(r))
                      : Formula::disj(std::move(l), std::move(r));
    }
    case Formula::Kind::Exists: {
        Formula e = Formula::exists(f.vars, nnf(f.child(0), false));
        return negated ? Formula::negate(std::move(e)) : e;
    }
    default: return negated ? Formula::negate(f) : f;
    }
}

void flatten_and(const Formula& f, std::vector<Formula>& out)
{
    if (f.kind == Formula::Kind::And) {
        flatten_and(f.child(0), out);
        flatten_and(f.child(1), out);
    } else {
        out.push_back(f);
    }
}

Formula and_left(std::vector<Formula> parts)
{
    Formula acc = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i)
        acc = Formula::conj(std::move(acc), std::move(parts[i]));
    return acc;
}

Formula push_exists(std::vector<Track> vars, Formula body);

// Quantifies the conjunction of `conj` over `vars`, every one of which is
// free in at least two conjuncts of one connected group.
Formula quantify_group(std::vector<Track> vars, std::vector<Formula> conj)
{
    if (vars.size() == 1)
        return Formula::exists(std::move(vars), and_left(std::move(conj)));
    // Outermost: the variable shared by most conjuncts.
    std::size_t best = 0;
    std::size_t best_users = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        std::size_t users = 0;
        for (const auto& c : conj)
            users += (free_vars(c) & track_bit(vars[i])) ? 1 : 0;
        if (users > best_users) {
            best = i;
            best_users = users;
        }
    }
    const Track outer = vars[best];
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(best));
    return Formula::exists({outer}, push_exists(std::move(vars), and_left(std::move(conj))));
}

Formula push_exists(std::vector<Track> vars, Formula body)
{
    const TrackMask fv = free_vars(body);
    std::erase_if(vars, [&](Track v) { return !(fv & track_bit(v)); });
    if (vars.empty())
        return body;

    switch (body.kind) {
    case Formula::Kind::Or:
        return Formula::disj(push_exists(vars, body.child(0)), push_exists(vars, body.child(1)));
    case Formula::Kind::Exists: {
        std::vector<Track> merged = vars;
        merged.insert(merged.end(), body.vars.begin(), body.vars.end());
        return push_exists(std::move(merged), body.child(0));
    }
    case Formula::Kind::And: break;
    default: return Formula::exists(std::move(vars), std::move(body));
    }

    std::vector<Formula> conj;
    flatten_and(body, conj);
    const std::size_t n = conj.size();
    std::vector<TrackMask> mentions(n);
    for (std::size_t i = 0; i < n; ++i)
        mentions[i] = free_vars(conj[i]);

    // Variables used by a single conjunct move into it.
    std::vector<std::vector<Track>> inner(n);
    std::vector<Track> shared;
    for (Track v : vars) {
        std::vector<std::size_t> users;
        for (std::size_t i = 0; i < n; ++i)
            if (mentions[i] & track_bit(v))
                users.push_back(i);
        if (users.size() == 1)
            inner[users[0]].push_back(v);
        else
            shared.push_back(v);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!inner[i].empty()) {
            conj[i] = push_exists(std::move(inner[i]), std::move(conj[i]));
            mentions[i] = free_vars(conj[i]);
        }

    const TrackMask shared_mask = mask_of(shared);
    std::vector<std::size_t> group(n);
    std::iota(group.begin(), group.end(), 0);
    const auto find = [&](std::size_t i) {
        while (group[i] != i)
            i = group[i] = group[group[i]];
        return i;
    };
    for (Track v : shared) {
        std::size_t first = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mentions[i] & track_bit(v)))
                continue;
            if (first == n)
                first = i;
            else
                group[find(i)] = find(first);
        }
    }

    // Conjuncts sorted by the shared variables they mention; those mentioning
    // none come first and stay outside every quantifier.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return (mentions[a] & shared_mask) < (mentions[b] & shared_mask);
    });

    std::vector<Formula> parts;
    std::vector<std::size_t> roots;
    std::map<std::size_t, std::vector<Formula>> members;
    for (std::size_t i : order) {
        if ((mentions[i] & shared_mask) == 0) {
            parts.push_back(std::move(conj[i]));
            continue;
        }
        const std::size_t r = find(i);
        if (!members.contains(r))
            roots.push_back(r);
        members[r].push_back(std::move(conj[i]));
    }
    for (std::size_t r : roots) {
        TrackMask used = 0;
        for (const auto& c : members[r])
            used |= free_vars(c);
        std::vector<Track> gvars;
        for (Track v : shared)
            if (used & track_bit(v))
                gvars.push_back(v);
        parts.push_back(quantify_group(std::move(gvars), std::move(members[r])));
    }
    return and_left(std::move(parts));
}

Formula push_quantifiers(const Formula& f)
{
    if (f.is_atom() || f.kind == Formula::Kind::Automaton)
        return f;
    Formula out = f;
    for (auto& c : out.children)
        c = push_quantifiers(c);
    if (out.kind == Formula::Kind::Exists)
        return push_exists(out.vars, std::move(out.children[0]));
    return out;
}

} // namespace

Formula push_negations(const Formula& f) { return nnf(f, false); }

Problem antiprenex(const Problem& p, int max_passes)
{
    Formula cur = p.formula;
    for (int pass = 0; pass < max_passes; ++pass) {
        Formula next = push_quantifiers(nnf(cur, false));
        if (next == cur)
            break;
        cur = std::move(next);
    }
    return {p.universe, std::move(cur)};
}

} // namespace wsone
