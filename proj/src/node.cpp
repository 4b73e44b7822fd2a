#include "treedup/node.hpp"

#include <algorithm>
#include <sstream>

#include "treedup/error.hpp"

namespace treedup {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::duplicate_value: return "DuplicateValue";
    case ErrorCode::not_comparable: return "NotComparable";
    case ErrorCode::out_of_interval: return "OutOfInterval";
    case ErrorCode::not_in_both: return "NotInBoth";
    case ErrorCode::equal_points: return "EqualPoints";
    case ErrorCode::empty_set: return "EmptySet";
    case ErrorCode::not_a_cover: return "NotACover";
    case ErrorCode::projection_mismatch: return "ProjectionMismatch";
    case ErrorCode::no_valid_theta: return "NoValidTheta";
    case ErrorCode::round_budget_exceeded: return "RoundBudgetExceeded";
    case ErrorCode::zero_function: return "ZeroFunction";
    case ErrorCode::zero_at_point: return "ZeroAtPoint";
    case ErrorCode::unknown_suite: return "UnknownSuite";
    case ErrorCode::config_invalid: return "ConfigInvalid";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

Node Node::from_values(std::vector<Value> values) {
  std::vector<Value> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error(ErrorCode::duplicate_value,
                "value " + std::to_string(*dup) + " repeats in " + unchecked(values).to_string());
  }
  return unchecked(std::move(values));
}

bool Node::has_value(Value v) const noexcept {
  return std::find(values_.begin(), values_.end(), v) != values_.end();
}

Node Node::prefix(std::size_t len) const {
  return unchecked(std::vector<Value>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(len)));
}

Node Node::extended(Value v) const {
  if (has_value(v)) {
    throw Error(ErrorCode::duplicate_value, to_string() + " already uses " + std::to_string(v));
  }
  std::vector<Value> vals = values_;
  vals.push_back(v);
  return unchecked(std::move(vals));
}

std::string Node::to_string() const {
  if (values_.empty()) return "()";
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (k) os << ',';
    os << values_[k];
  }
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const Node& a, const Node& b) {
  if (auto c = a.values_.size() <=> b.values_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.values_.begin(), a.values_.end(),
                                                b.values_.begin(), b.values_.end());
}

bool precedes(const Node& s, const Node& t) {
  if (s.length() > t.length()) return false;
  return std::equal(s.values().begin(), s.values().end(), t.values().begin());
}

bool precedes(const NodeOrRoot& s, const NodeOrRoot& t) {
  if (s.is_root()) return true;
  if (t.is_root()) return false;
  return precedes(s.node(), t.node());
}

bool strictly_precedes(const NodeOrRoot& s, const NodeOrRoot& t) {
  return s.level() < t.level() && precedes(s, t);
}

Node meet(const Node& s, const Node& t) {
  const auto sv = s.values();
  const auto tv = t.values();
  auto [si, ti] = std::mismatch(sv.begin(), sv.end(), tv.begin(), tv.end());
  return s.prefix(static_cast<std::size_t>(si - sv.begin()));
}

std::size_t antichain_index(const NodeOrRoot& x) {
  if (x.is_root()) return 0;
  if (x.node().empty()) return 1;
  return static_cast<std::size_t>(x.node().back()) + 2;
}

std::vector<Node> immediate_successors(const Node& s, Value cap) {
  std::vector<Node> out;
  for (Value v = 0; v < cap; ++v) {
    if (!s.has_value(v)) out.push_back(s.extended(v));
  }
  return out;
}

Value min_excluded(const Node& s, const std::set<Value>& forbidden) {
  Value v = 0;
  while (s.has_value(v) || forbidden.contains(v)) ++v;
  return v;
}

Fragment::Fragment(std::vector<Node> nodes, Value alphabet, std::size_t depth, Injectivity injectivity)
    : nodes_(std::move(nodes)), alphabet_(alphabet), depth_(depth) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (nodes_.empty() || !nodes_.front().empty()) {
    throw Error(ErrorCode::config_invalid, "fragment must contain the empty node");
  }
  for (const Node& n : nodes_) {
    if (n.length() > depth_) {
      throw Error(ErrorCode::config_invalid, n.to_string() + " is longer than depth " + std::to_string(depth_));
    }
    for (Value v : n.values()) {
      if (v >= alphabet_) {
        throw Error(ErrorCode::config_invalid, n.to_string() + " uses a value outside the alphabet");
      }
    }
    if (injectivity == Injectivity::enforce) Node::from_values({n.values().begin(), n.values().end()});
    if (!n.empty() && !contains(n.parent())) {
      throw Error(ErrorCode::config_invalid, "fragment is not prefix-closed at " + n.to_string());
    }
  }
}

std::optional<std::size_t> Fragment::index_of(const Node& n) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), n);
  if (it == nodes_.end() || *it != n) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool Fragment::contains(const Node& n) const { return index_of(n).has_value(); }

Fragment generate_fragment(std::size_t depth, Value alphabet, Injectivity injectivity) {
  std::vector<Node> nodes{Node{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= depth; ++len) {
    const std::size_t level_end = nodes.size();
    for (std::size_t k = level_begin; k < level_end; ++k) {
      for (Value v = 0; v < alphabet; ++v) {
        if (injectivity == Injectivity::enforce && nodes[k].has_value(v)) continue;
        std::vector<Value> vals(nodes[k].values().begin(), nodes[k].values().end());
        vals.push_back(v);
        nodes.push_back(Node::unchecked(std::move(vals)));
      }
    }
    level_begin = level_end;
  }
  return Fragment(std::move(nodes), alphabet, depth, injectivity);
}

}  // namespace treedup
