// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace qpriv {

// Worker count for fan-out loops: QPRIV_WORKERS if set, else hardware
// concurrency, floored at 1.
int worker_count();

// Runs fn(i) for i in [0, n) across the worker pool. Callers write results
// into preallocated slots so the combined output is order-independent of the
// scheduling. Exceptions are captured and rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qpriv
