#include "treedup/duplicate.hpp"

#include <algorithm>
#include <map>

#include "treedup/tau.hpp"

namespace treedup {

std::string Point::to_string() const {
  return "(" + node.to_string() + "," + (sign == Sign::plus ? "+1" : "-1") + ")";
}

BasicOpen::BasicOpen(NodeOrRoot r, Node t, Sign i) : r_(std::move(r)), t_(std::move(t)), i_(i) {
  if (!strictly_precedes(r_, t_)) {
    throw Error(ErrorCode::not_comparable, "basic open needs " + r_.to_string() + " strictly below " + t_.to_string());
  }
}

std::string BasicOpen::to_string() const {
  return "W(" + r_.to_string() + "," + t_.to_string() + "," + (i_ == Sign::plus ? "+1" : "-1") + ")";
}

bool in_interval(const NodeOrRoot& r, const Node& s, const Node& t) {
  return strictly_precedes(r, s) && precedes(s, t);
}

Sign sign_at(const BasicOpen& w, const Node& s) {
  if (!in_interval(w.r(), s, w.t())) {
    throw Error(ErrorCode::out_of_interval, s.to_string() + " is outside " + w.to_string());
  }
  return alternate(w.i(), ell(s, w.t()));
}

bool contains(const BasicOpen& w, const Point& p) {
  return in_interval(w.r(), p.node, w.t()) && sign_at(w, p.node) == p.sign;
}

std::vector<Point> members(const BasicOpen& w) {
  std::vector<Point> out;
  const auto lowest = static_cast<std::size_t>(w.r().level() + 1);
  for (std::size_t len = lowest; len <= w.t().length(); ++len) {
    Node s = w.t().prefix(len);
    const Sign j = sign_at(w, s);
    out.push_back({std::move(s), j});
  }
  return out;
}

std::vector<Point> members(const BasicOpen& w, const Fragment& frag) {
  std::vector<Point> out = members(w);
  std::erase_if(out, [&](const Point& p) { return !frag.contains(p.node); });
  return out;
}

bool OpenSet::contains(const Point& p) const {
  return std::any_of(pieces.begin(), pieces.end(), [&](const BasicOpen& w) { return treedup::contains(w, p); });
}

std::vector<Point> members(const OpenSet& u, const Fragment& frag) {
  std::vector<Point> out;
  for (const BasicOpen& w : u.pieces) {
    auto part = members(w, frag);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Point> fragment_points(const Fragment& frag) {
  std::vector<Point> out;
  out.reserve(2 * frag.size());
  for (const Node& n : frag.nodes()) {
    out.push_back({n, Sign::plus});
    out.push_back({n, Sign::minus});
  }
  return out;
}

std::size_t point_id(const Fragment& frag, const Point& p) {
  auto idx = frag.index_of(p.node);
  if (!idx) throw Error(ErrorCode::config_invalid, p.node.to_string() + " is not in the fragment");
  return 2 * *idx + (p.sign == Sign::minus ? 1 : 0);
}

Point point_at(const Fragment& frag, std::size_t id) {
  if (id >= 2 * frag.size()) throw Error(ErrorCode::config_invalid, "point id out of range");
  return {frag.nodes()[id / 2], id % 2 == 0 ? Sign::plus : Sign::minus};
}

BasicOpen refine_intersection(const Point& p, const BasicOpen& w1, const BasicOpen& w2) {
  if (!contains(w1, p) || !contains(w2, p)) {
    throw Error(ErrorCode::not_in_both, p.to_string() + " is not in both " + w1.to_string() + " and " + w2.to_string());
  }
  // All candidates are predecessors of p.node, hence a chain: take the longest.
  NodeOrRoot base = w1.r().level() >= w2.r().level() ? w1.r() : w2.r();
  for (const BasicOpen* w : {&w1, &w2}) {
    if (w->t() == p.node) continue;
    NodeOrRoot r = local_extension_base(p.node, w->t());
    if (r.level() > base.level()) base = std::move(r);
  }
  return BasicOpen(std::move(base), p.node, p.sign);
}

std::pair<BasicOpen, BasicOpen> hausdorff_witness(const Point& p1, const Point& p2) {
  if (p1 == p2) throw Error(ErrorCode::equal_points, p1.to_string());
  const Node& t1 = p1.node;
  const Node& t2 = p2.node;
  if (t1 == t2) {
    return {BasicOpen(NodeOrRoot::root(), t1, p1.sign), BasicOpen(NodeOrRoot::root(), t2, p2.sign)};
  }
  if (precedes(t1, t2)) {
    return {BasicOpen(NodeOrRoot::root(), t1, p1.sign), BasicOpen(t1, t2, p2.sign)};
  }
  if (precedes(t2, t1)) {
    return {BasicOpen(t2, t1, p1.sign), BasicOpen(NodeOrRoot::root(), t2, p2.sign)};
  }
  Node m = meet(t1, t2);
  return {BasicOpen(m, t1, p1.sign), BasicOpen(m, t2, p2.sign)};
}

IsolatedPoint isolated_point(std::span<const Point> e) {
  if (e.empty()) throw Error(ErrorCode::empty_set, "isolated_point needs a nonempty set");
  // The canonically least node is tree-minimal: strict predecessors are shorter.
  const Point& least = *std::min_element(e.begin(), e.end());
  return {least, BasicOpen(NodeOrRoot::root(), least.node, least.sign)};
}

std::vector<BasicOpen> chain_subcover(const BasicOpen& w, std::span<const BasicOpen> cover, const Fragment& frag) {
  std::vector<Point> chain = members(w, frag);
  std::reverse(chain.begin(), chain.end());

  std::vector<BasicOpen> picked;
  std::size_t at = 0;
  while (at < chain.size()) {
    auto hit = std::find_if(cover.begin(), cover.end(), [&](const BasicOpen& c) { return contains(c, chain[at]); });
    if (hit == cover.end()) throw NotACover(chain[at]);
    if (std::find(picked.begin(), picked.end(), *hit) == picked.end()) picked.push_back(*hit);
    ++at;
    while (at < chain.size() && contains(*hit, chain[at])) ++at;
  }
  return picked;
}

namespace {

struct Projection {
  NodeOrRoot base;
  Node top;
  std::map<Node, Sign> signs;
};

Projection project_onto_interval(const OpenSet& u, const Fragment& frag, const char* label) {
  const std::vector<Point> pts = members(u, frag);
  if (pts.empty()) throw Error(ErrorCode::projection_mismatch, std::string(label) + " is empty over the fragment");
  Projection proj{NodeOrRoot::root(), pts.back().node, {}};
  for (const Point& p : pts) {
    if (!proj.signs.emplace(p.node, p.sign).second) {
      throw Error(ErrorCode::projection_mismatch, std::string(label) + " holds both signs over " + p.node.to_string());
    }
    if (!precedes(p.node, proj.top)) {
      throw Error(ErrorCode::projection_mismatch, std::string(label) + " does not project onto a chain");
    }
  }
  const std::size_t lowest = proj.signs.begin()->first.length();
  if (proj.signs.size() != proj.top.length() - lowest + 1) {
    throw Error(ErrorCode::projection_mismatch, std::string(label) + " does not project onto an interval");
  }
  if (lowest > 0) proj.base = proj.top.prefix(lowest - 1);
  return proj;
}

}  // namespace

AlignedRefinement refine_pair(const OpenSet& u, const OpenSet& v, const Fragment& frag) {
  const Projection pu = project_onto_interval(u, frag, "U");
  const Projection pv = project_onto_interval(v, frag, "V");
  if (pu.top != pv.top || pu.base != pv.base) {
    throw Error(ErrorCode::projection_mismatch, "U and V project onto different intervals");
  }

  AlignedRefinement out;
  Node cur = pu.top;
  const std::ptrdiff_t floor = pu.base.level();
  while (true) {
    const Sign p = pu.signs.at(cur);
    const Sign q = pv.signs.at(cur);
    // Walk down while both basic pieces W(s, cur, p), W(s, cur, q) stay inside U, V.
    std::ptrdiff_t len = static_cast<std::ptrdiff_t>(cur.length()) - 1;
    for (; len > floor; --len) {
      const Node s = cur.prefix(static_cast<std::size_t>(len));
      const std::size_t parity = ell(s, cur);
      if (pu.signs.at(s) != alternate(p, parity) || pv.signs.at(s) != alternate(q, parity)) break;
    }
    NodeOrRoot next = len < 0 ? NodeOrRoot::root() : NodeOrRoot(cur.prefix(static_cast<std::size_t>(len)));
    out.left.emplace_back(next, cur, p);
    out.right.emplace_back(next, cur, q);
    if (len <= floor) break;
    cur = next.node();
  }
  return out;
}

}  // namespace treedup
