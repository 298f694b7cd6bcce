#pragma once

#include <cstddef>
#include <functional>

namespace erpic {

/// Worker-thread cap from ERPIC_THREADS (default 1), read once.
int thread_count();

/// Splits [0, n) into one contiguous chunk per worker and runs
/// fn(chunk_index, begin, end) on each. Serial when workers == 1. Chunk
/// boundaries depend only on (n, workers), so chunked reductions are
/// reproducible for a fixed thread configuration.
void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(int, std::size_t, std::size_t)>& fn);

}  // namespace erpic
