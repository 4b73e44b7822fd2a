#pragma once

// Descent sequences between comparable nodes.
//
// For s ≺ t, start at dom t and repeatedly step to the position of the
// minimum of t over [dom s, current); the visited positions, listed from
// dom s upwards, form tau(s,t). tau(t,t) is empty.

#include <cstdint>
#include <limits>
#include <vector>

#include "treedup/node.hpp"

namespace treedup {

/// Positions (β_k, ..., β_1) in that order: strictly increasing, first entry
/// dom s, every entry < dom t.
using TauSeq = std::vector<std::size_t>;

/// p-values are naturals or infinity (for p(t,t)).
using PValue = std::uint64_t;
inline constexpr PValue kInfiniteP = std::numeric_limits<PValue>::max();

/// Throws Error(not_comparable) unless s ≼ t.
TauSeq tau(const Node& s, const Node& t);
std::size_t ell(const Node& s, const Node& t);
/// t(β_1) for s ≺ t, kInfiniteP for s = t.
PValue p_value(const Node& s, const Node& t);

/// The r of the local-extension lemma for t ≺ u: Root when t is empty,
/// otherwise the immediate predecessor of t.
NodeOrRoot local_extension_base(const Node& t, const Node& u);

/// tau(s,u) == tau(s,t) ⌢ tau(t,u). Requires s ≼ t ≼ u.
bool check_concatenation(const Node& s, const Node& t, const Node& u);

}  // namespace treedup
