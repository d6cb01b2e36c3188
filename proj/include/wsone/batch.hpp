// batch.hpp -- deciding many independent problems at once.

#ifndef WSONE_BATCH_HPP
#define WSONE_BATCH_HPP

#include "wsone/solver.hpp"

#include <span>
#include <vector>

namespace wsone {

/// One solver context per problem, problems distributed over OpenMP threads.
/// Tracing is disabled. Results are in input order.
std::vector<Verdict> decide_batch(std::span<const Problem> problems, const SolveOptions& opts);

/// Same results computed one after the other.
std::vector<Verdict> decide_batch_serial(std::span<const Problem> problems, const SolveOptions& opts);

} // namespace wsone

#endif
