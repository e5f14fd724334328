#pragma once

#include <cstddef>
#include <functional>

namespace heterovar {

//! Worker count: HETEROVAR_THREADS when set (0 = auto), otherwise the
//! hardware concurrency.
std::size_t thread_cap();

//! Runs fn(0..count-1) across a small worker pool. Tasks must be
//! independent; results keyed by index stay identical for every thread
//! count. The first exception thrown by a task is rethrown after join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace heterovar
