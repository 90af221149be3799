#pragma once

namespace spectral_clt {

/// Thread count for OpenMP kernels: `requested` if positive, else the
/// SPECTRAL_CLT_THREADS environment variable if set to a positive integer,
/// else the OpenMP default. Never returns less than one.
int resolve_threads(int requested = 0);

}  // namespace spectral_clt
