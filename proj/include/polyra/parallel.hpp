#pragma once

#include <cstddef>
#include <functional>

namespace polyra {

// Worker count used by the library's internal loops. 0 means "auto":
// the POLYRA_THREADS environment variable if set, else hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n). Work is split into contiguous chunks so
// that results written by index are independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace polyra
