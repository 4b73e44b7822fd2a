#pragma once

// The duplicate D = tree × {+1,-1} and its basic open sets
//
//   W(r,t,i) = {(s, (-1)^ell(s,t) * i) : r ≺ s ≼ t}.
//
// Every W projects injectively onto the node interval (r,t]; the sign
// oscillates with the parity of the descent length down from t.

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "treedup/error.hpp"
#include "treedup/node.hpp"

namespace treedup {

enum class Sign : std::int8_t { plus = 1, minus = -1 };

constexpr Sign operator-(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr int to_int(Sign s) { return static_cast<int>(s); }
/// (-1)^exponent * s
constexpr Sign alternate(Sign s, std::size_t exponent) { return exponent % 2 == 0 ? s : -s; }

struct Point {
  Node node;
  Sign sign = Sign::plus;

  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;
  /// Canonical node order, then +1 before -1.
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.node <=> b.node; c != 0) return c;
    return to_int(b.sign) <=> to_int(a.sign);
  }
};

/// W(r,t,i); requires r ≺ t.
class BasicOpen {
 public:
  BasicOpen(NodeOrRoot r, Node t, Sign i);

  const NodeOrRoot& r() const noexcept { return r_; }
  const Node& t() const noexcept { return t_; }
  Sign i() const noexcept { return i_; }

  std::string to_string() const;
  friend bool operator==(const BasicOpen&, const BasicOpen&) = default;

 private:
  NodeOrRoot r_;
  Node t_;
  Sign i_;
};

/// r ≺ s ≼ t
bool in_interval(const NodeOrRoot& r, const Node& s, const Node& t);

/// (-1)^ell(s, W.t) * W.i; throws out_of_interval unless s ∈ (W.r, W.t].
Sign sign_at(const BasicOpen& w, const Node& s);
bool contains(const BasicOpen& w, const Point& p);
/// One point per node of (W.r, W.t] lying in the fragment, shortest first.
std::vector<Point> members(const BasicOpen& w, const Fragment& frag);
/// Same, without a fragment: every node of (W.r, W.t].
std::vector<Point> members(const BasicOpen& w);

/// Finite union of basic opens; overlap is allowed.
struct OpenSet {
  std::vector<BasicOpen> pieces;

  bool contains(const Point& p) const;
  friend bool operator==(const OpenSet&, const OpenSet&) = default;
};

/// Members of the union restricted to fragment nodes, sorted and deduplicated.
std::vector<Point> members(const OpenSet& u, const Fragment& frag);

/// Both signs of every fragment node, in canonical point order.
std::vector<Point> fragment_points(const Fragment& frag);
/// Dense id of a fragment point: 2*index + (sign == minus).
std::size_t point_id(const Fragment& frag, const Point& p);
Point point_at(const Fragment& frag, std::size_t id);

/// A basic open around p inside W1 ∩ W2. The base is the largest of W1.r,
/// W2.r and local_extension_base(p.node, Wj.t) for each Wj whose top lies
/// strictly above p. Throws not_in_both.
BasicOpen refine_intersection(const Point& p, const BasicOpen& w1, const BasicOpen& w2);

/// Disjoint basic opens around two distinct points. Throws equal_points.
std::pair<BasicOpen, BasicOpen> hausdorff_witness(const Point& p1, const Point& p2);

struct IsolatedPoint {
  Point point;
  BasicOpen neighbourhood;
};

/// A point of E over a tree-minimal node (canonically least), with W(Root,t,i)
/// meeting E only there. Throws empty_set.
IsolatedPoint isolated_point(std::span<const Point> e);

class NotACover : public Error {
 public:
  explicit NotACover(Point witness)
      : Error(ErrorCode::not_a_cover, "uncovered point " + witness.to_string()), witness_(std::move(witness)) {}
  const Point& witness() const noexcept { return witness_; }

 private:
  Point witness_;
};

/// Descending-chain subcover: start at the top point of W, take the first
/// cover element containing it, walk down while that element still contains
/// W's points, and repeat from the first point it misses. Throws NotACover.
std::vector<BasicOpen> chain_subcover(const BasicOpen& w, std::span<const BasicOpen> cover, const Fragment& frag);

struct AlignedRefinement {
  std::vector<BasicOpen> left;
  std::vector<BasicOpen> right;
};

/// Splits two open sets that project injectively onto the same interval into
/// aligned basic pieces, each pair equal or disjoint. Throws projection_mismatch.
AlignedRefinement refine_pair(const OpenSet& u, const OpenSet& v, const Fragment& frag);

}  // namespace treedup
