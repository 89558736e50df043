#include "aseplab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace aseplab::parallel {

namespace {
int g_threads = 0;
}

int threads_from_env() {
  const char* v = std::getenv(kThreadsEnv);
  if (v == nullptr) return 0;
  try {
    const int n = std::stoi(v);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

int max_threads() {
  if (g_threads > 0) return g_threads;
  const int env = threads_from_env();
  if (env > 0) return env;
  return omp_get_max_threads();
}

void set_max_threads(int n) { g_threads = n > 0 ? n : 0; }

}  // namespace aseplab::parallel
