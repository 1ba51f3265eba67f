#pragma once

namespace bornforge {

/// Caps OpenMP parallelism to the BORNFORGE_THREADS environment variable when
/// set; returns the effective thread count.
int apply_thread_limit_from_env();

}  // namespace bornforge
