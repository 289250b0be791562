#include "cubesos/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "cubesos/errors.hpp"

namespace cubesos {

namespace {

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    return fallback;
  }
}

Config load() {
  Config c;
  c.max_n = env_int("CUBESOS_MAX_N", c.max_n);
  c.threads = env_int("CUBESOS_THREADS", c.threads);
  c.sdp_max_dim = env_int("CUBESOS_SDP_MAX_DIM", c.sdp_max_dim);
  return c;
}

}  // namespace

Config& config() {
  static Config c = load();
  return c;
}

int effective_threads() {
  int t = config().threads;
  if (t <= 0) t = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return t;
}

void require_within_cap(int n, const char* what) {
  if (n > config().max_n || n > 30)
    throw CapExceeded(std::string(what) + ": n=" + std::to_string(n) +
                      " exceeds enumeration cap " + std::to_string(config().max_n));
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  std::size_t workers = std::min<std::size_t>(effective_threads(), count / 4096 + 1);
  if (workers <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace cubesos
