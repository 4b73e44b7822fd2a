#pragma once

// G_δ-diagonal witnesses for the duplicate and ☆-sequence verification.
//
//   V(u,i,p) = {(t, (-1)^ell(t,u) * i) : t ≼ u, p(t,u) >= p}
//
// G_p = {V(u,i,p)} is an open cover for each p >= 1, and two distinct points
// lie in a common member of G_p only while p <= p(u1,u2) (u1 ≺ u2).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treedup/duplicate.hpp"
#include "treedup/sweep.hpp"
#include "treedup/tau.hpp"

namespace treedup {

struct VSet {
  Node u;
  Sign i = Sign::plus;
  PValue p = 1;

  std::string to_string() const;
};

enum class VMembership {
  standard,
  /// Negative control: drops the sign condition.
  ignore_sign,
};

bool v_contains(const VSet& v, const Point& x, VMembership rule = VMembership::standard);
/// Members over the fragment, shortest node first. Requires v.u in the fragment.
std::vector<Point> v_members(const VSet& v, const Fragment& frag, VMembership rule = VMembership::standard);

/// Least p* >= 1 such that no V(u,i,p) with u anywhere in the tree and
/// p >= p* contains both points: p(u1,u2) + 1 for u1 ≺ u2, else 1.
/// Throws equal_points.
PValue separating_threshold(const Point& a, const Point& b);

/// The same quantity by enumerating every VSet with u in the fragment and
/// 1 <= p <= p_limit. Bounded above by separating_threshold; returns
/// p_limit + 1 if even p_limit fails to separate.
PValue separating_threshold_in(const Fragment& frag, const Point& a, const Point& b, PValue p_limit,
                               VMembership rule = VMembership::standard);

struct GdeltaCounterexample {
  Point a;
  Point b;
  VSet v;
  std::string reason;
};

struct GdeltaReport {
  std::size_t pairs_checked = 0;
  std::size_t vsets_checked = 0;
  std::size_t failures = 0;
  std::optional<GdeltaCounterexample> counterexample;

  bool ok() const noexcept { return failures == 0; }
};

/// For every pair of distinct fragment points, no V(u,i,p*) with u in the
/// fragment contains both (p* = separating_threshold); and every V(u,i,p),
/// p <= p_max, is open relative to the fragment. Throws config_invalid when
/// some threshold exceeds p_max. A non-null `pair_sample` restricts the pair
/// check to those PairIndex positions over fragment_points.
GdeltaReport verify_gdelta(const Fragment& frag, PValue p_max, Exec exec = Exec::parallel,
                           VMembership rule = VMembership::standard,
                           const std::vector<std::size_t>* pair_sample = nullptr);

/// Sorted point ids (see point_id); `infinity` is an extra id outside the fragment.
using PointSet = std::vector<std::size_t>;
using Family = std::vector<PointSet>;

struct StarSequence {
  std::vector<Family> families;
  std::size_t universe = 0;
  std::optional<std::size_t> infinity;
};

/// The families G_1..G_{p_max} over the fragment's points.
StarSequence star_from_gdelta(const Fragment& frag, PValue p_max, VMembership rule = VMembership::standard);

/// Adds the point at infinity and the one-set family {all fragment points}.
StarSequence extend_to_compactification(const StarSequence& seq, const Fragment& frag);

struct StarReport {
  std::size_t pairs_checked = 0;
  std::size_t failures = 0;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;

  bool ok() const noexcept { return failures == 0; }
};

/// Every unordered pair {x,y} of the universe needs some family that meets
/// {x,y} and has no member containing both. `pair_sample` as in verify_gdelta.
StarReport verify_star(const StarSequence& seq, Exec exec = Exec::parallel,
                       const std::vector<std::size_t>* pair_sample = nullptr);

}  // namespace treedup
