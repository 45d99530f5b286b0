#pragma once

#include <cstddef>
#include <functional>

namespace lowzero {

// Worker pool size used by parallel_for. Resolved once from LOWZERO_THREADS
// (default 1) unless overridden. Results of parallel loops must be written to
// index-addressed storage only, so output is identical for any worker count.
int worker_count();
void set_worker_count(int n);

void parallel_for(std::size_t n, const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace lowzero
