#include "ghom/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "ghom/errors.hpp"

namespace ghom {

namespace {
std::atomic<std::size_t> g_cap{kDefaultEnumerationCap};
std::atomic<unsigned> g_threads{1};
}  // namespace

std::size_t enumeration_cap() { return g_cap.load(); }
void set_enumeration_cap(std::size_t cap) { g_cap.store(cap); }

unsigned thread_count() { return g_threads.load(); }
void set_thread_count(unsigned n) { g_threads.store(std::max(1u, n)); }

void check_cap(int degree, std::size_t count) {
  if (count > enumeration_cap()) throw EnumerationCapExceeded(degree, count, enumeration_cap());
}

std::size_t parallel_chunks(std::size_t n,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
  // Small inputs are not worth a thread.
  if (threads <= 1 || n < 64) {
    body(0, 0, n);
    return 1;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    workers.emplace_back([&, c] {
      try {
        body(c, c * chunk, std::min(n, (c + 1) * chunk));
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return chunks;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  parallel_chunks(n, [&](std::size_t, std::size_t b, std::size_t e) { body(b, e); });
}

}  // namespace ghom
