#include "gb/threads.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gb {

int worker_count() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("GBOUND_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

}  // namespace gb
