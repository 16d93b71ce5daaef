#pragma once

#include <cstddef>
#include <functional>

namespace ghom {

// Process-wide knobs. Both are read at call time; results never depend on
// the thread count.
std::size_t enumeration_cap();
void set_enumeration_cap(std::size_t cap);
inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

unsigned thread_count();
void set_thread_count(unsigned n);

// Throws EnumerationCapExceeded when count > enumeration_cap().
void check_cap(int degree, std::size_t count);

// Runs body(begin, end) over contiguous chunks of [0, n). Chunks are fixed by
// n and the thread count; callers write into disjoint slots so the combined
// output is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

// Like parallel_for but hands each chunk its index so per-chunk outputs can be
// concatenated in order afterwards. Returns the number of chunks used.
std::size_t parallel_chunks(std::size_t n,
                            const std::function<void(std::size_t chunk, std::size_t begin,
                                                     std::size_t end)>& body);

}  // namespace ghom
