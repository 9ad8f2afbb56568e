#include "ttn/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ttn::parallel {

namespace {

int env_threads() {
  const char* v = std::getenv("TTN_THREADS");
  if (!v) return 0;
  try {
    const int n = std::stoi(v);
    return n > 0 ? n : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
  const int cap = env_threads();
  return cap > 0 ? cap : omp_get_max_threads();
#else
  return 1;
#endif
}

void configure_from_env() {
#ifdef _OPENMP
  if (const int cap = env_threads(); cap > 0) omp_set_num_threads(cap);
#endif
}

}  // namespace ttn::parallel
