#pragma once

#include <cstddef>
#include <functional>

namespace szego {

// Worker count used by parallel_for when none is given: set_default_threads, else
// SZEGO_LAB_THREADS, else std::thread::hardware_concurrency().
void set_default_threads(std::size_t k);
std::size_t default_threads();

// Runs body(i) for i in [0, n). Each index writes its own output slot, so results do not depend on
// scheduling. The first exception is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t threads = 0);

}  // namespace szego
