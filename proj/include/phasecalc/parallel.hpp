#ifndef PHASECALC_PARALLEL_HPP
#define PHASECALC_PARALLEL_HPP

#include <functional>

namespace phasecalc {

/// Worker count from PHASECALC_THREADS (default 1).
int thread_count();

/// Runs body(i) for i in [0, n). Iterations are split into contiguous
/// blocks, so results written to disjoint slots are schedule independent.
void parallel_for(long n, const std::function<void(long)>& body);

}  // namespace phasecalc

#endif  // PHASECALC_PARALLEL_HPP
