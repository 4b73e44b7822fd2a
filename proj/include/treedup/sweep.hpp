#pragma once

// Exhaustive check kernels. A check is a pure predicate over an index range
// that returns true when item `i` is a counterexample. The serial kernel is
// the reference; the OpenMP kernel must agree with it exactly, which is why
// both always scan the full range and report the least failing index.

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>

namespace treedup {

enum class Exec { serial, parallel };

Exec parse_exec(std::string_view name);

struct SweepOutcome {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::optional<std::size_t> first_failure;

  bool ok() const noexcept { return failures == 0; }
  friend bool operator==(const SweepOutcome&, const SweepOutcome&) = default;
};

template <class IsCounterexample>
SweepOutcome sweep_serial(std::size_t count, IsCounterexample&& fails) {
  SweepOutcome out;
  out.checked = count;
  for (std::size_t i = 0; i < count; ++i) {
    bool bad = true;
    try {
      bad = fails(i);
    } catch (...) {
    }
    if (bad) {
      ++out.failures;
      if (!out.first_failure) out.first_failure = i;
    }
  }
  return out;
}

template <class IsCounterexample>
SweepOutcome sweep_parallel(std::size_t count, IsCounterexample&& fails) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::size_t first = none;
  std::size_t failures = 0;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 64) reduction(min : first) reduction(+ : failures)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    bool bad = true;
    // exceptions must not cross the parallel region
    try {
      bad = fails(static_cast<std::size_t>(i));
    } catch (...) {
    }
    if (bad) {
      ++failures;
      if (static_cast<std::size_t>(i) < first) first = static_cast<std::size_t>(i);
    }
  }
  SweepOutcome out;
  out.checked = count;
  out.failures = failures;
  if (first != none) out.first_failure = first;
  return out;
}

template <class IsCounterexample>
SweepOutcome sweep(Exec exec, std::size_t count, IsCounterexample&& fails) {
  if (exec == Exec::parallel) return sweep_parallel(count, fails);
  return sweep_serial(count, fails);
}

/// Unordered pairs (a, b) with a < b over `n` items, indexed densely.
struct PairIndex {
  std::size_t n = 0;

  std::size_t count() const noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }
  /// Inverse of the row-major enumeration of {(a,b) : a < b}.
  std::pair<std::size_t, std::size_t> at(std::size_t k) const noexcept {
    std::size_t a = 0;
    std::size_t row = n - 1;
    while (k >= row) {
      k -= row;
      ++a;
      --row;
    }
    return {a, a + 1 + k};
  }
};

}  // namespace treedup
