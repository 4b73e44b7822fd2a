#pragma once

// The non-Gruenhage argument as an executable adversary.
//
// A candidate is a finite list of open sets U_1..U_N. Nodes whose two points
// are never split by a single U_n refute it outright. Otherwise each split
// node t lands in E_{n,i}, is tagged with a base theta(t) such that
// W(theta(t), t, i) ⊆ U_n, and is bucketed by the antichain holding theta(t).
// Within a bucket, comparable nodes sit an even descent length apart, and
// the diagonalization game uses exactly that to walk a branch out of every
// bucket in turn.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treedup/duplicate.hpp"
#include "treedup/sweep.hpp"

namespace treedup {

struct Candidate {
  std::vector<OpenSet> opens;
};

/// Nodes t with no U_n meeting {(t,+1),(t,-1)} in exactly one point.
std::vector<Node> uncovered_nodes(const Candidate& c, const Fragment& frag);

enum class ThetaRule {
  /// Least base r with W(r,t,i) ⊆ U_n (largest neighbourhood).
  widest,
  /// Greatest such r: always the immediate predecessor of t.
  tightest,
};

struct ESet {
  std::size_t n = 0;  ///< 1-based index of the open set
  std::size_t m = 0;  ///< antichain index of every theta value
  Sign i = Sign::plus;
  std::vector<Node> nodes;
  std::map<Node, NodeOrRoot> theta;

  std::string label() const;
};

/// Nonempty E_{n,m,i} in (n, +1 before -1, m) order. Throws no_valid_theta
/// if some U_n is not open around one of its points relative to the fragment.
std::vector<ESet> decompose(const Candidate& c, const Fragment& frag, ThetaRule rule = ThetaRule::widest);

/// Comparable pairs t ≺ u of the set whose descent length ell(t,u) is odd.
std::vector<std::pair<Node, Node>> check_even_ell(const ESet& e);
/// The subset of check_even_ell with theta(t) == theta(u).
std::vector<std::pair<Node, Node>> equal_theta_violations(const ESet& e);

/// Membership test for one E_m: an explicit node set or a predicate.
class EOracle {
 public:
  static EOracle from_nodes(std::vector<Node> nodes, std::string label = {});
  static EOracle from_predicate(std::function<bool(const Node&)> pred, std::string label = {});

  bool contains(const Node& n) const { return pred_(n); }
  const std::string& label() const noexcept { return label_; }

 private:
  EOracle(std::function<bool(const Node&)> pred, std::string label)
      : pred_(std::move(pred)), label_(std::move(label)) {}
  std::function<bool(const Node&)> pred_;
  std::string label_;
};

/// E_{n,m,i} flattened to E_1..E_M in decompose order.
std::vector<EOracle> flatten(const std::vector<ESet>& esets);

struct DiagRound {
  std::size_t m = 0;
  Node t;
  Value k = 0;
  Value l = 0;
  Node u;
  /// Λ_{j+1} as computed by the game; absent for traces read back from JSON.
  std::optional<std::vector<Node>> survivors;
};

enum class DiagStatus { escaped, fragment_exhausted, obstruction_violated };

std::string_view to_string(DiagStatus s);
DiagStatus parse_diag_status(std::string_view s);

struct DiagTrace {
  std::vector<DiagRound> rounds;
  std::vector<Value> forbidden;
  DiagStatus status = DiagStatus::escaped;
};

enum class SurvivorRule {
  standard,
  /// Negative control: Λ_{j+1} keeps branches through k_j.
  ignore_k_exclusion,
};

class RoundBudgetExceeded : public Error {
 public:
  explicit RoundBudgetExceeded(DiagTrace partial)
      : Error(ErrorCode::round_budget_exceeded,
              "E-members still reachable after " + std::to_string(partial.rounds.size()) + " rounds"),
        partial_(std::make_shared<DiagTrace>(std::move(partial))) {}
  const DiagTrace& partial() const noexcept { return *partial_; }

 private:
  std::shared_ptr<const DiagTrace> partial_;
};

/// Plays the game over E_1..E_M (1-based m in the trace). Round j takes the
/// least m_j > m_{j-1} meeting Λ_j and the canonically least t_j there, then
///   k_j = min ω \ (ran t_j ∪ {k_1..k_{j-1}}),  l_j = min ω \ (ran t_j ∪ {k_1..k_j}),
///   u_j = t_j ⌢ l_j,  Λ_{j+1} = {v ∈ Λ_j : u_j ≼ v, k_j ∉ ran v}.
DiagTrace diagonalize(std::span<const EOracle> esets, const Fragment& frag, std::size_t max_rounds,
                      SurvivorRule rule = SurvivorRule::standard);

struct TraceReport {
  std::size_t checked = 0;
  std::optional<std::string> failure;

  bool ok() const noexcept { return !failure.has_value(); }
};

/// Replays the trace against the rules above and certifies every survivor v:
/// tau(t_j, v) = (dom t_j), v(dom t_j) = l_j is the least value from dom t_j
/// on, and no forbidden value occurs in v. Unless the trace reports an
/// obstruction, Λ_{j+1} must also miss E_1..E_{m_j}.
TraceReport verify_trace(const DiagTrace& trace, std::span<const EOracle> esets, const Fragment& frag,
                         Exec exec = Exec::parallel);

}  // namespace treedup
