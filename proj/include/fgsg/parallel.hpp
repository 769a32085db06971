#pragma once

#include <cstddef>
#include <functional>

namespace fgsg {

/// Worker count: FGSG_THREADS if set, else hardware concurrency; 1 in reference mode.
int thread_count();
void set_reference_mode(bool on);
bool reference_mode();

/// Runs body(i) for i in [0, n). Results must be written to slot i only, so the
/// outcome does not depend on scheduling. If several calls throw, the exception
/// from the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fgsg
