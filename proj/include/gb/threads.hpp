#pragma once

namespace gb {

// OpenMP worker count, capped by the GBOUND_THREADS environment variable.
int worker_count();

}  // namespace gb
