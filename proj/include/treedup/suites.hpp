#pragma once

// Verification suites over generated fragments, and their JSON reports.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "treedup/sweep.hpp"
#include "treedup/tau.hpp"

namespace treedup {

enum class Mutation {
  none,
  drop_v_sign,       ///< gdelta, star, compactify: V-membership ignores the sign
  drop_k_exclusion,  ///< gruenhage: Λ_{j+1} keeps branches through k_j
  drop_injectivity,  ///< every suite: fragments admit repeated values
};

std::string_view to_string(Mutation m);
Mutation parse_mutation(std::string_view name);

struct SuiteConfig {
  std::size_t depth = 3;
  Value alphabet = 4;
  /// Defaults to max fragment value + 2.
  std::optional<PValue> p_max;
  std::size_t rounds = 64;
  std::uint64_t seed = 1;
  /// Overrides the suite's own sample count (random subsets, covers, families, functions).
  std::optional<std::size_t> samples;
  Mutation mutation = Mutation::none;
  Exec exec = Exec::parallel;
  /// Pair sweeps above this size are sampled uniformly instead.
  std::size_t pair_budget = 1'000'000;
};

struct SuiteReport {
  std::string suite;
  std::size_t depth = 0;
  Value alphabet = 0;
  std::size_t fragment_size = 0;
  std::string mode = "exhaustive";  ///< or "sampled"
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  /// First few witnesses, in discovery order.
  std::vector<std::string> failures;
  double elapsed_ms = 0.0;
  std::uint64_t seed = 0;
  std::string mutation = "none";
  nlohmann::json details = nlohmann::json::object();

  bool passed() const noexcept { return failure_count == 0; }
};

inline constexpr std::size_t kMaxRecordedFailures = 20;

/// tau, basis, hausdorff, scattered, subcover, refine, gdelta, star, compactify, gruenhage, talagrand
const std::vector<std::string>& suite_names();

/// Throws unknown_suite or config_invalid.
SuiteReport run_suite(std::string_view name, const SuiteConfig& config);
/// Every suite, in suite_names() order; suites run concurrently.
std::vector<SuiteReport> run_all(const SuiteConfig& config);

nlohmann::json to_json(const SuiteReport& r);

}  // namespace treedup
