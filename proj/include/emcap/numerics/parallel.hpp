// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace emcap::numerics {

/// Worker count: hardware concurrency, capped by EMCAP_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n). Iterations are split into contiguous chunks
/// across threads; results must not depend on the split. The first exception
/// thrown by any iteration is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace emcap::numerics
