#pragma once

#include <cstddef>
#include <vector>

namespace aseplab::parallel {

// Environment variable consulted for the default worker count.
inline constexpr const char* kThreadsEnv = "ASEPLAB_THREADS";

// Fixed work-block size for reductions. Partial sums are formed per block and
// combined in block order, so results do not depend on the worker count.
inline constexpr std::size_t kBlock = 256;

int max_threads();
void set_max_threads(int n);
// Reads kThreadsEnv; returns 0 when unset or unparsable.
int threads_from_env();

template <class T, class F>
T ordered_sum(std::size_t n, F&& term, std::size_t block = kBlock) {
  const std::size_t nblocks = (n + block - 1) / block;
  std::vector<T> partial(nblocks, T{});
  const long long nb = static_cast<long long>(nblocks);
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
  for (long long b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * block;
    const std::size_t hi = lo + block < n ? lo + block : n;
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

template <class T, class F>
T serial_sum(std::size_t n, F&& term) {
  T total{};
  for (std::size_t i = 0; i < n; ++i) total += term(i);
  return total;
}

// Runs body(i) for i in [0, n) across workers. Each index must write only its own slot.
template <class F>
void for_each_index(std::size_t n, F&& body) {
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(max_threads())
  for (long long i = 0; i < nn; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace aseplab::parallel
