#pragma once

#include <cstddef>
#include <functional>

namespace cubesos {

struct Config {
  int max_n = 24;       // enumeration cap for exhaustive cube work
  int threads = 0;      // 0 = hardware concurrency
  int sdp_max_dim = 4096;
};

// Process-wide settings. Defaults are overridden by CUBESOS_* environment
// variables on first access; callers may override further.
Config& config();

int effective_threads();

// Throws CapExceeded when n is above the enumeration cap.
void require_within_cap(int n, const char* what);

// Splits [0, count) into contiguous chunks run on up to effective_threads().
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace cubesos
