#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "treedup/duplicate.hpp"
#include "treedup/tau.hpp"

namespace treedup {
namespace {

Node N(std::vector<Value> v) { return Node::from_values(std::move(v)); }
const NodeOrRoot kRoot = NodeOrRoot::root();
constexpr Sign P = Sign::plus;
constexpr Sign M = Sign::minus;

BasicOpen W(NodeOrRoot r, Node t, Sign i) { return BasicOpen(std::move(r), std::move(t), i); }

TEST(BasicOpen, RequiresStrictPredecessor) {
  EXPECT_THROW(W(N({0}), N({0}), P), Error);
  EXPECT_THROW(W(N({1}), N({0, 1}), P), Error);
  EXPECT_EQ(W(kRoot, N({0, 1}), P).to_string(), "W(root,(0,1),+1)");
}

TEST(BasicOpen, SignAt) {
  const BasicOpen w = W(kRoot, N({0, 1}), P);
  EXPECT_EQ(sign_at(w, N({0, 1})), P);
  EXPECT_EQ(sign_at(w, N({0})), M);
  EXPECT_EQ(sign_at(w, N({})), M);
  EXPECT_THROW(sign_at(w, N({1})), Error);
  EXPECT_THROW(sign_at(W(N({0}), N({0, 1}), P), N({0})), Error);
}

TEST(BasicOpen, Contains) {
  const BasicOpen w = W(kRoot, N({0, 1}), P);
  EXPECT_TRUE(contains(w, {N({0}), M}));
  EXPECT_FALSE(contains(w, {N({0}), P}));
  EXPECT_FALSE(contains(w, {N({1}), M}));
}

TEST(BasicOpen, Members) {
  const Fragment f = generate_fragment(2, 3);
  EXPECT_EQ(members(W(kRoot, N({0, 1}), P), f),
            (std::vector<Point>{{N({}), M}, {N({0}), M}, {N({0, 1}), P}}));
  EXPECT_EQ(members(W(N({0}), N({0, 1}), P), f), (std::vector<Point>{{N({0, 1}), P}}));
  EXPECT_EQ(members(W(kRoot, N({}), P), f), (std::vector<Point>{{N({}), P}}));
}

TEST(RefineIntersection, Examples) {
  const Point p{N({0}), M};
  EXPECT_EQ(refine_intersection(p, W(kRoot, N({0, 1}), P), W(kRoot, N({0}), M)), W(N({}), N({0}), M));
  const BasicOpen w = W(N({2}), N({2, 0, 1}), M);
  const BasicOpen same = refine_intersection({N({2, 0, 1}), M}, w, w);
  EXPECT_TRUE(contains(same, {N({2, 0, 1}), M}));
  EXPECT_EQ(same.t(), w.t());
  try {
    refine_intersection({N({0}), P}, W(kRoot, N({0, 1}), P), W(kRoot, N({0}), P));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_in_both);
  }
}

TEST(Hausdorff, Examples) {
  const auto [a, b] = hausdorff_witness({N({0}), P}, {N({0}), M});
  EXPECT_EQ(a, W(kRoot, N({0}), P));
  EXPECT_EQ(b, W(kRoot, N({0}), M));
  const auto [c, d] = hausdorff_witness({N({0, 1}), P}, {N({0, 2}), P});
  EXPECT_EQ(c.r(), NodeOrRoot(N({0})));
  EXPECT_EQ(d.r(), NodeOrRoot(N({0})));
  EXPECT_THROW(hausdorff_witness({N({0}), P}, {N({0}), P}), Error);
  // comparable nodes
  const auto [e, g] = hausdorff_witness({N({0}), P}, {N({0, 1}), M});
  EXPECT_EQ(e, W(kRoot, N({0}), P));
  EXPECT_EQ(g, W(N({0}), N({0, 1}), M));
}

TEST(Scattered, Examples) {
  const std::vector<Point> one{{N({0}), P}};
  EXPECT_EQ(isolated_point(one).point, one[0]);
  EXPECT_EQ(isolated_point(one).neighbourhood, W(kRoot, N({0}), P));
  const std::vector<Point> two{{N({0}), P}, {N({}), M}};
  EXPECT_EQ(isolated_point(two).point, (Point{N({}), M}));
  EXPECT_EQ(isolated_point(two).neighbourhood, W(kRoot, N({}), M));
  const std::vector<Point> tie{{N({1}), P}, {N({0}), P}};
  EXPECT_EQ(isolated_point(tie).point, (Point{N({0}), P}));
  EXPECT_THROW(isolated_point(std::vector<Point>{}), Error);
}

TEST(ChainSubcover, Examples) {
  const Fragment f = generate_fragment(2, 3);
  const BasicOpen w = W(kRoot, N({0, 1}), P);
  const std::vector<BasicOpen> self{w};
  EXPECT_EQ(chain_subcover(w, self, f), self);

  // W(root,(0),-1) holds (∅,+1), not (∅,-1), so these two pieces leave (∅,-1) bare.
  const std::vector<BasicOpen> short_cover{W(N({0}), N({0, 1}), P), W(kRoot, N({0}), M)};
  try {
    chain_subcover(w, short_cover, f);
    FAIL() << "expected NotACover";
  } catch (const NotACover& e) {
    EXPECT_EQ(e.witness(), (Point{N({}), M}));
  }

  const std::vector<BasicOpen> cover{W(N({0}), N({0, 1}), P), W(N({}), N({0}), M), W(kRoot, N({}), M)};
  EXPECT_EQ(chain_subcover(w, cover, f), cover);
}

TEST(ChainSubcover, SkipsRedundantPieces) {
  const Fragment f = generate_fragment(3, 4);
  const BasicOpen w = W(kRoot, N({2, 0, 3}), P);
  const std::vector<BasicOpen> cover{W(N({5 - 5}), N({0, 1}), P), w, W(kRoot, N({2}), M)};
  EXPECT_EQ(chain_subcover(w, cover, f), std::vector<BasicOpen>{w});
}

TEST(RefinePair, Examples) {
  const Fragment f = generate_fragment(2, 3);
  const OpenSet u{{W(kRoot, N({0, 1}), P)}};
  const AlignedRefinement same = refine_pair(u, u, f);
  EXPECT_EQ(same.left, u.pieces);
  EXPECT_EQ(same.right, u.pieces);

  const OpenSet opposite{{W(kRoot, N({0, 1}), M)}};
  const AlignedRefinement flip = refine_pair(u, opposite, f);
  EXPECT_EQ(flip.left, u.pieces);
  EXPECT_EQ(flip.right, opposite.pieces);

  // Aligned as equal / disjoint / equal: the middle point ((0),-1) vs ((0),+1)
  // cannot share a basic piece with (∅,-1).
  const OpenSet v{{W(N({0}), N({0, 1}), P), W(kRoot, N({0}), P)}};
  const AlignedRefinement three = refine_pair(u, v, f);
  EXPECT_EQ(three.left,
            (std::vector<BasicOpen>{W(N({0}), N({0, 1}), P), W(N({}), N({0}), M), W(kRoot, N({}), M)}));
  EXPECT_EQ(three.right,
            (std::vector<BasicOpen>{W(N({0}), N({0, 1}), P), W(N({}), N({0}), P), W(kRoot, N({}), M)}));

  EXPECT_THROW(refine_pair(u, OpenSet{{W(kRoot, N({0}), P)}}, f), Error);
  EXPECT_THROW(refine_pair(OpenSet{{W(kRoot, N({0, 1}), P), W(kRoot, N({0, 1}), M)}}, u, f), Error);
}

// Sign coherence along the concatenation identity.
TEST(DuplicateProperty, SignCoherence) {
  const Fragment f = generate_fragment(4, 5);
  for (const Node& u : f.nodes()) {
    const BasicOpen w = W(kRoot, u, P);
    for (std::size_t lt = 0; lt <= u.length(); ++lt) {
      const Node t = u.prefix(lt);
      for (std::size_t ls = 0; ls <= lt; ++ls) {
        const Node s = t.prefix(ls);
        if (!check_concatenation(s, t, u)) continue;
        EXPECT_EQ(sign_at(w, s), alternate(sign_at(w, t), ell(s, t)));
      }
    }
  }
}

TEST(DuplicateProperty, ProjectionInjective) {
  const Fragment f = generate_fragment(3, 4);
  for (const Node& t : f.nodes()) {
    for (std::size_t len = 0; len <= t.length(); ++len) {
      const NodeOrRoot r = len == 0 ? kRoot : NodeOrRoot(t.prefix(len - 1));
      const auto pts = members(W(r, t, M), f);
      std::set<Node> nodes;
      for (const Point& p : pts) nodes.insert(p.node);
      EXPECT_EQ(nodes.size(), pts.size());
      EXPECT_EQ(pts.size(), t.length() - static_cast<std::size_t>(r.level() + 1) + 1);
    }
  }
}

TEST(DuplicateProperty, SubcoverNoLongerThanChain) {
  const Fragment f = generate_fragment(3, 4);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const Node& t = f.nodes()[std::uniform_int_distribution<std::size_t>(0, f.size() - 1)(rng)];
    const BasicOpen w = W(kRoot, t, P);
    std::vector<BasicOpen> cover;
    for (const Point& p : members(w, f)) {
      const NodeOrRoot r = p.node.empty() ? kRoot : NodeOrRoot(p.node.parent());
      cover.push_back(W(r, p.node, p.sign));
    }
    cover.push_back(w);
    std::shuffle(cover.begin(), cover.end(), rng);
    const auto sub = chain_subcover(w, cover, f);
    EXPECT_LE(sub.size(), t.length() + 1);
    for (const Point& p : members(w, f)) {
      EXPECT_TRUE(std::any_of(sub.begin(), sub.end(), [&](const BasicOpen& c) { return contains(c, p); }));
    }
  }
}

TEST(PointIds, RoundTrip) {
  const Fragment f = generate_fragment(3, 4);
  const auto pts = fragment_points(f);
  ASSERT_EQ(pts.size(), 2 * f.size());
  for (std::size_t id = 0; id < pts.size(); ++id) {
    EXPECT_EQ(point_id(f, pts[id]), id);
    EXPECT_EQ(point_at(f, id), pts[id]);
  }
}

}  // namespace
}  // namespace treedup
