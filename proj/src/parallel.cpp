#include "fss/parallel.hpp"

#include <omp.h>

namespace fss {

int resolve_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

}  // namespace fss
