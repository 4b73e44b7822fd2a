#pragma once

// Finite fragment of Kurepa's tree: injective finite sequences of naturals
// ordered by extension, plus the bottom sentinel Root.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace treedup {

using Value = std::uint32_t;

/// An element of the tree with finite domain: position k holds t(k).
/// Values are pairwise distinct unless built through `Node::unchecked`.
class Node {
 public:
  Node() = default;

  /// Throws Error(duplicate_value) when the values are not pairwise distinct.
  static Node from_values(std::vector<Value> values);

  /// Skips the injectivity check. Callers must already know the values are
  /// distinct (or be deliberately building a negative-control fragment).
  static Node unchecked(std::vector<Value> values) {
    Node n;
    n.values_ = std::move(values);
    return n;
  }

  std::size_t length() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  std::span<const Value> values() const noexcept { return values_; }
  Value operator[](std::size_t k) const { return values_[k]; }
  Value back() const { return values_.back(); }

  bool has_value(Value v) const noexcept;

  /// Initial segment of the given length (len <= length()).
  Node prefix(std::size_t len) const;
  /// Immediate predecessor; requires a nonempty node.
  Node parent() const { return prefix(length() - 1); }
  /// s⌢(v). Throws duplicate_value if v is already in the range.
  Node extended(Value v) const;

  std::string to_string() const;

  friend bool operator==(const Node&, const Node&) = default;
  /// Canonical order: shorter first, then lexicographic.
  friend std::strong_ordering operator<=>(const Node& a, const Node& b);

 private:
  std::vector<Value> values_;
};

/// Either a Node or the extra bottom element 0 (Root) that precedes every node.
class NodeOrRoot {
 public:
  NodeOrRoot(Node node) : node_(std::move(node)) {}  // NOLINT: implicit on purpose
  static NodeOrRoot root() { return NodeOrRoot(); }

  bool is_root() const noexcept { return !node_.has_value(); }
  const Node& node() const { return *node_; }
  /// -1 for Root, otherwise the node length; strictly monotone along chains.
  std::ptrdiff_t level() const noexcept {
    return node_ ? static_cast<std::ptrdiff_t>(node_->length()) : -1;
  }
  std::string to_string() const { return node_ ? node_->to_string() : "root"; }

  friend bool operator==(const NodeOrRoot&, const NodeOrRoot&) = default;

 private:
  NodeOrRoot() = default;
  std::optional<Node> node_;
};

bool precedes(const Node& s, const Node& t);
bool precedes(const NodeOrRoot& s, const NodeOrRoot& t);
bool strictly_precedes(const NodeOrRoot& s, const NodeOrRoot& t);
inline bool comparable(const Node& s, const Node& t) { return precedes(s, t) || precedes(t, s); }

/// Longest common initial segment. Always a Node: the empty node is a common
/// predecessor of every pair.
Node meet(const Node& s, const Node& t);

/// 0 for Root, 1 for the empty node, last value + 2 otherwise.
std::size_t antichain_index(const NodeOrRoot& x);

/// s⌢(v) for every v < cap outside ran s, in increasing v.
std::vector<Node> immediate_successors(const Node& s, Value cap);

/// Least natural outside ran s and outside `forbidden`. Ranges over all of ω.
Value min_excluded(const Node& s, const std::set<Value>& forbidden);

enum class Injectivity {
  enforce,
  /// Negative control only: admits repeated values.
  skip_validation,
};

/// Finite prefix-closed set of nodes over the alphabet {0..alphabet-1},
/// stored in canonical order.
class Fragment {
 public:
  /// Validates prefix closure, presence of the empty node, values below the
  /// alphabet, lengths within depth, and (by default) injectivity.
  Fragment(std::vector<Node> nodes, Value alphabet, std::size_t depth,
           Injectivity injectivity = Injectivity::enforce);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  Value alphabet() const noexcept { return alphabet_; }
  std::size_t depth() const noexcept { return depth_; }
  /// Largest value any node may use (alphabet - 1); 0 for an empty alphabet.
  Value max_value() const noexcept { return alphabet_ == 0 ? 0 : alphabet_ - 1; }

  bool contains(const Node& n) const;
  std::optional<std::size_t> index_of(const Node& n) const;

 private:
  std::vector<Node> nodes_;
  Value alphabet_;
  std::size_t depth_;
};

/// All sequences of length <= depth over the alphabet; injective ones only
/// unless the negative-control flag is passed.
Fragment generate_fragment(std::size_t depth, Value alphabet,
                           Injectivity injectivity = Injectivity::enforce);

}  // namespace treedup
