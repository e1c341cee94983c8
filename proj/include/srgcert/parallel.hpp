#pragma once

#include <cstddef>
#include <functional>

namespace srgcert {

/// Worker count: SRG_CERT_THREADS if set to a positive integer, else
/// `requested` if positive, else the number of logical cores.
int resolve_threads(int requested);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Callers write
/// results into slot i, so the outcome does not depend on scheduling. If any
/// call throws, the exception from the smallest index is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace srgcert
