#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <optional>
#include <vector>

namespace bilip {

/// results[k] = fn(k) for k < n, spread over at most `threads` workers.
/// Output order does not depend on the thread count.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out;
  out.reserve(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(fn(k));
    return out;
  }
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(threads));
  std::vector<std::future<std::vector<std::pair<std::size_t, T>>>> futures;
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      std::vector<std::pair<std::size_t, T>> part;
      for (std::size_t k = w; k < n; k += workers) part.emplace_back(k, fn(k));
      return part;
    }));
  }
  std::vector<std::optional<T>> slots(n);
  for (auto& f : futures)
    for (auto& [k, v] : f.get()) slots[k].emplace(std::move(v));
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace bilip
