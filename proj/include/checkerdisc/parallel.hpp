#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace checkerdisc {

/// Worker count used by parallel_for. Defaults to 1.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count). Indices are split into fixed contiguous
/// blocks whose layout does not depend on the worker count, so any body that
/// writes only to slot i produces identical results for every thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Evaluates fn on every index and returns the results in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace checkerdisc
