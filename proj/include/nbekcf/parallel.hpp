#pragma once

#include <functional>

namespace nbekcf {

// Thread cap for the loops below. 0 means auto (hardware concurrency).
// Resolution order: value set through set_thread_cap, otherwise the
// NBEKCF_THREADS environment variable, otherwise auto.
int thread_cap();
void set_thread_cap(int cap);

// Runs fn(i) for i in [begin, end). Work is split into contiguous chunks,
// one per worker; with a cap of 1 (or a trivial range) it runs inline.
// Tasks must write to disjoint locations; results do not depend on the
// thread count.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

}  // namespace nbekcf
