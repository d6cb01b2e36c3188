// Serial vs OpenMP batch decide on a random corpus.
// usage: bench_batch [count] [seed]

#include "support.hpp"

#include "wsone/batch.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace wsone;

int main(int argc, char** argv)
{
    const int count = argc > 1 ? std::atoi(argv[1]) : 2000;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;

    std::mt19937_64 rng(seed);
    std::vector<Problem> problems;
    for (int i = 0; i < count; ++i)
        problems.push_back(testing::random_formula(rng));

    std::printf("threads=%d problems=%d\n", omp_get_max_threads(), count);
    std::printf("mode\tserial_ms\tparallel_ms\tspeedup\tsame\n");
    bool all_same = true;
    for (Mode m : {Mode::Lazy, Mode::Explicit, Mode::Combined}) {
        SolveOptions o;
        o.mode = m;
        using Clock = std::chrono::steady_clock;
        auto t0 = Clock::now();
        const auto ser = decide_batch_serial(problems, o);
        auto t1 = Clock::now();
        const auto par = decide_batch(problems, o);
        auto t2 = Clock::now();
        bool same = true;
        for (std::size_t i = 0; i < problems.size(); ++i)
            same = same && ser[i].result == par[i].result &&
                   ser[i].stats.terms_interned == par[i].stats.terms_interned;
        all_same = all_same && same;
        const double s = std::chrono::duration<double, std::milli>(t1 - t0).count();
        const double p = std::chrono::duration<double, std::milli>(t2 - t1).count();
        std::printf("%s\t%.1f\t%.1f\t%.2f\t%s\n", to_string(m), s, p, s / p, same ? "yes" : "NO");
    }
    return all_same ? 0 : 1;
}
