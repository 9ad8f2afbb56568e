#pragma once

namespace ttn::parallel {

/// Thread cap from TTN_THREADS (positive integer), else the OpenMP default.
/// Returns 1 in builds without OpenMP.
int thread_count();

/// Applies TTN_THREADS to the OpenMP runtime. Idempotent.
void configure_from_env();

}  // namespace ttn::parallel
