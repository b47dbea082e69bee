#ifndef TEMPOTSP_PARALLEL_H
#define TEMPOTSP_PARALLEL_H

#include <functional>

namespace tempotsp {

// Worker cap: min(hardware, TEMPOTSP_THREADS env var, programmatic cap).
// Results of every parallel section in this project are required to be
// bit-identical to sequential execution, so the cap only affects speed.
int max_threads();

// Overrides the cap for the current process; 0 restores the default.
void set_thread_cap(int cap);

// Runs fn(i) for i in [0, n), partitioned into contiguous chunks across
// workers. fn must only write to per-index slots.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace tempotsp

#endif  // TEMPOTSP_PARALLEL_H
