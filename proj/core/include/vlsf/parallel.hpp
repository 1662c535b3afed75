#pragma once

#include <cstddef>
#include <functional>

namespace vlsf {

/// Runs body(i) for i in [0, count) across worker threads. Work items
/// must be independent; callers keep determinism by writing results
/// into per-index slots and reducing in index order afterwards.
/// threads = 0 picks the hardware concurrency.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace vlsf
