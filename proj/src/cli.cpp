#include "wsone/cli.hpp"

#include "wsone/families.hpp"
#include "wsone/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace wsone {

namespace {

struct DecideArgs {
    std::string mode = "lazy";
    bool sat = false;
    bool no_antiprenex = false;
    bool no_prune = false;
    std::string subsumption = "eliminate";
    bool stats = false;
    bool trace = false;
    std::string dump_dir;
    double timeout = 0;
    std::string file;
};

struct GenArgs {
    std::string family;
    int n = 1;
    std::string output;
};

struct BenchArgs {
    std::string family;
    int max_n = 1;
    std::string modes = "lazy,explicit";
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty())
            out.push_back(item);
    return out;
}

int decide(const DecideArgs& a, std::ostream& out, std::ostream& err)
{
    std::ifstream in(a.file);
    if (!in) {
        err << "wsone: cannot open '" << a.file << "'\n";
        return kExitInputError;
    }
    std::stringstream text;
    text << in.rdbuf();

    SolveOptions opts;
    opts.mode = *parse_mode(a.mode);
    opts.antiprenex = !a.no_antiprenex;
    opts.prune = !a.no_prune;
    opts.subsumption = a.subsumption == "cheap" ? SubsumptionMode::Cheap : SubsumptionMode::Eliminate;
    if (a.timeout > 0)
        opts.timeout_seconds = a.timeout;
    if (!a.dump_dir.empty())
        opts.dump_dir = a.dump_dir;
    std::ostringstream trace;
    if (a.trace)
        opts.trace = &trace;

    Verdict v;
    try {
        Problem p = parse(text.str());
        if (!a.sat && !is_ground(alpha_rename(p).formula)) {
            err << a.file << ": formula has free variables; use --sat\n";
            return kExitInputError;
        }
        v = a.sat ? decide_sat(p, opts) : decide_valid(p, opts);
    } catch (const ParseError& e) {
        err << a.file << ":" << e.what() << '\n';
        return kExitInputError;
    } catch (const AlphabetError& e) {
        err << a.file << ": " << e.what() << '\n';
        return kExitInputError;
    }

    out << to_string(v.result) << '\n';
    if (!v.decided())
        err << "wsone: " << v.message << '\n';
    if (a.stats)
        out << render_stats(v.stats);
    if (a.trace)
        out << trace.str();
    return v.decided() ? kExitDecided : kExitBudget;
}

int gen(const GenArgs& a, std::ostream& out, std::ostream& err)
{
    std::string text;
    try {
        text = gen_family({a.family, a.n});
    } catch (const std::invalid_argument& e) {
        err << "wsone: " << e.what() << '\n';
        return kExitInputError;
    }
    if (a.output.empty()) {
        out << text << '\n';
        return kExitDecided;
    }
    std::ofstream os(a.output);
    if (!os) {
        err << "wsone: cannot write '" << a.output << "'\n";
        return kExitInputError;
    }
    os << text << '\n';
    return kExitDecided;
}

int bench(const BenchArgs& a, std::ostream& out, std::ostream& err)
{
    std::vector<Mode> modes;
    for (const auto& m : split(a.modes, ',')) {
        auto mode = parse_mode(m);
        if (!mode) {
            err << "wsone: unknown mode '" << m << "'\n";
            return kExitInputError;
        }
        modes.push_back(*mode);
    }
    const auto& names = family_names();
    if (std::find(names.begin(), names.end(), a.family) == names.end() || a.max_n < 1) {
        err << "wsone: unknown family '" << a.family << "' or bad --max-n\n";
        return kExitInputError;
    }

    out << "family\tn\tmode\tverdict\ttime_ms\tterms\tstates\n";
    for (int n = 1; n <= a.max_n; ++n) {
        const Problem p = parse(gen_family({a.family, n}));
        for (Mode m : modes) {
            SolveOptions opts;
            opts.mode = m;
            const auto start = std::chrono::steady_clock::now();
            const Verdict v = decide_valid(p, opts);
            const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
            out << a.family << '\t' << n << '\t' << to_string(m) << '\t' << to_string(v.result) << '\t'
                << std::fixed << std::setprecision(3) << ms.count() << '\t' << v.stats.terms_interned
                << '\t' << v.stats.automata_states << '\n';
        }
    }
    return kExitDecided;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"WS1S decision procedure", "wsone"};
    app.require_subcommand(1);

    DecideArgs d;
    auto* dec = app.add_subcommand("decide", "decide the formula in FILE");
    dec->add_option("--mode", d.mode, "lazy, explicit or combined")
        ->check(CLI::IsMember({"lazy", "explicit", "combined"}));
    dec->add_flag("--sat", d.sat, "decide satisfiability of the existential closure");
    dec->add_flag("--no-antiprenex", d.no_antiprenex);
    dec->add_flag("--no-prune", d.no_prune);
    dec->add_option("--subsumption", d.subsumption)->check(CLI::IsMember({"eliminate", "cheap"}));
    dec->add_flag("--stats", d.stats);
    dec->add_flag("--trace", d.trace);
    dec->add_option("--dump-automata", d.dump_dir, "directory for automaton dumps");
    dec->add_option("--timeout", d.timeout, "seconds")->check(CLI::NonNegativeNumber);
    dec->add_option("FILE", d.file)->required();

    GenArgs g;
    auto* gn = app.add_subcommand("gen", "print a family member");
    gn->add_option("--family", g.family)->required();
    gn->add_option("--n", g.n)->required();
    gn->add_option("-o", g.output);

    BenchArgs b;
    auto* bn = app.add_subcommand("bench", "TSV timings over a family");
    bn->add_option("--family", b.family)->required();
    bn->add_option("--max-n", b.max_n)->required();
    bn->add_option("--modes", b.modes);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitDecided;
    } catch (const CLI::ParseError& e) {
        err << "wsone: " << e.what() << '\n';
        return kExitInputError;
    }

    if (dec->parsed())
        return decide(d, out, err);
    if (gn->parsed())
        return gen(g, out, err);
    return bench(b, out, err);
}

} // namespace wsone
