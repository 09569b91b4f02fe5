#pragma once

namespace subergo {

// Every data-parallel kernel has a serial reference path. The two paths
// evaluate the same per-element expressions, so results agree bit-for-bit.
enum class Exec { serial, parallel };

// Worker cap from SUBERGO_THREADS, or 0 when unset.
int worker_cap();

// Applies worker_cap() to the OpenMP runtime (no-op without OpenMP).
void apply_worker_cap();

}  // namespace subergo
