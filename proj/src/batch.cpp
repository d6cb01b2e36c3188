#include "wsone/batch.hpp"

#include <exception>

namespace wsone {

std::vector<Verdict> decide_batch_serial(std::span<const Problem> problems, const SolveOptions& opts)
{
    SolveOptions o = opts;
    o.trace = nullptr;
    std::vector<Verdict> out;
    out.reserve(problems.size());
    for (const auto& p : problems)
        out.push_back(decide_valid(p, o));
    return out;
}

std::vector<Verdict> decide_batch(std::span<const Problem> problems, const SolveOptions& opts)
{
    SolveOptions o = opts;
    o.trace = nullptr;
    o.dump_dir.reset();
    std::vector<Verdict> out(problems.size());
    std::exception_ptr failure;
    const long n = static_cast<long>(problems.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = decide_valid(problems[i], o);
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

} // namespace wsone
