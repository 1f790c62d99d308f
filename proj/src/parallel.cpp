#include "sellab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace sellab {

int trial_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("SELECTION_LAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) n = std::min(n, cap);
    } catch (const std::exception&) {
      // Unparseable values leave the default in place.
    }
  }
  return std::max(n, 1);
}

}  // namespace sellab
