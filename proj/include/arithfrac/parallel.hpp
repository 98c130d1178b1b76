#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace arithfrac {

/// Splits [0, count) into contiguous chunks, runs fn(begin, end) on each in
/// its own thread and returns the results in chunk order. The first exception
/// thrown by any chunk is rethrown.
template <class Result, class Fn>
std::vector<Result> parallel_chunks(std::size_t count, unsigned workers, Fn fn) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
  std::vector<Result> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  auto run = [&](std::size_t c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    try {
      results[c] = fn(begin, end);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (chunks == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t c = 0; c < chunks; ++c) threads.emplace_back(run, c);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace arithfrac
