#include <gtest/gtest.h>

#include <algorithm>

#include "treedup/gruenhage.hpp"
#include "treedup/tau.hpp"

namespace treedup {
namespace {

Node N(std::vector<Value> v) { return Node::from_values(std::move(v)); }
const NodeOrRoot kRoot = NodeOrRoot::root();
constexpr Sign P = Sign::plus;
constexpr Sign M = Sign::minus;

BasicOpen W(NodeOrRoot r, Node t, Sign i) { return BasicOpen(std::move(r), std::move(t), i); }

std::vector<EOracle> hand_traced() {
  return {EOracle::from_nodes({N({})}, "E1"),
          EOracle::from_predicate([](const Node& t) { return t.has_value(2); }, "E2")};
}

TEST(Uncovered, Examples) {
  const Fragment f = generate_fragment(1, 2);
  EXPECT_EQ(uncovered_nodes(Candidate{}, f), f.nodes());

  const Fragment root_only = generate_fragment(0, 2);
  EXPECT_TRUE(uncovered_nodes(Candidate{{OpenSet{{W(kRoot, N({}), P)}}}}, root_only).empty());

  const Fragment small = generate_fragment(1, 1);
  const Candidate both{{OpenSet{{W(kRoot, N({0}), P), W(kRoot, N({0}), M)}}}};
  EXPECT_EQ(uncovered_nodes(both, small), (std::vector<Node>{N({}), N({0})}));
}

TEST(Decompose, Examples) {
  const Fragment f = generate_fragment(1, 2);
  const Candidate c{{OpenSet{{W(kRoot, N({0}), P)}}}};

  const auto wide = decompose(c, f);
  ASSERT_EQ(wide.size(), 2u);
  EXPECT_EQ(wide[0].label(), "E(n=1,m=0,i=+1)");
  EXPECT_EQ(wide[0].nodes, std::vector<Node>{N({0})});
  EXPECT_TRUE(wide[0].theta.at(N({0})).is_root());
  EXPECT_EQ(wide[1].i, M);
  EXPECT_EQ(wide[1].nodes, std::vector<Node>{N({})});

  const auto tight = decompose(c, f, ThetaRule::tightest);
  ASSERT_EQ(tight.size(), 2u);
  EXPECT_EQ(tight[0].m, 1u);
  EXPECT_EQ(tight[0].theta.at(N({0})), NodeOrRoot(N({})));

  std::vector<BasicOpen> everything;
  for (const Node& t : f.nodes()) {
    for (Sign i : {P, M}) everything.push_back(W(t.empty() ? kRoot : NodeOrRoot(t.parent()), t, i));
  }
  EXPECT_TRUE(decompose(Candidate{{OpenSet{everything}}}, f).empty());
  EXPECT_TRUE(decompose(Candidate{}, f).empty());
}

TEST(EvenEll, Examples) {
  ESet e;
  e.nodes = {N({}), N({3, 1, 2})};
  EXPECT_TRUE(check_even_ell(e).empty());
  e.nodes = {N({}), N({0})};
  EXPECT_EQ(check_even_ell(e), (std::vector<std::pair<Node, Node>>{{N({}), N({0})}}));
  e.nodes = {N({2})};
  EXPECT_TRUE(check_even_ell(e).empty());
}

TEST(EvenEll, EqualThetaHoldsOnDecomposition) {
  const Fragment f = generate_fragment(3, 4);
  const Candidate c{{OpenSet{{W(kRoot, N({0, 1}), P), W(kRoot, N({1, 0, 2}), M)}}, OpenSet{{W(kRoot, N({2, 3}), M)}}}};
  for (const ESet& e : decompose(c, f)) EXPECT_TRUE(equal_theta_violations(e).empty()) << e.label();
}

TEST(Diagonalize, HandTrace) {
  const Fragment f = generate_fragment(3, 5);
  const auto es = hand_traced();
  const DiagTrace tr = diagonalize(es, f, 8);
  ASSERT_EQ(tr.rounds.size(), 2u);
  EXPECT_EQ(tr.rounds[0].m, 1u);
  EXPECT_EQ(tr.rounds[0].t, N({}));
  EXPECT_EQ(tr.rounds[0].k, 0u);
  EXPECT_EQ(tr.rounds[0].l, 1u);
  EXPECT_EQ(tr.rounds[0].u, N({1}));
  EXPECT_EQ(tr.rounds[1].m, 2u);
  EXPECT_EQ(tr.rounds[1].t, N({1, 2}));
  EXPECT_EQ(tr.rounds[1].k, 3u);
  EXPECT_EQ(tr.rounds[1].l, 4u);
  EXPECT_EQ(tr.rounds[1].u, N({1, 2, 4}));
  EXPECT_EQ(tr.forbidden, (std::vector<Value>{0, 3}));
  // (1,2) and (1,2,4) both lie in E_2 at descent length 1.
  EXPECT_EQ(tr.status, DiagStatus::obstruction_violated);
  const TraceReport rep = verify_trace(tr, es, f);
  EXPECT_TRUE(rep.ok()) << rep.failure.value_or("");
  EXPECT_GT(rep.checked, 0u);
}

TEST(Diagonalize, EmptyFamilies) {
  const Fragment f = generate_fragment(2, 3);
  const std::vector<EOracle> none{EOracle::from_nodes({}), EOracle::from_nodes({})};
  const DiagTrace tr = diagonalize(none, f, 4);
  EXPECT_TRUE(tr.rounds.empty());
  EXPECT_EQ(tr.status, DiagStatus::escaped);
  EXPECT_TRUE(verify_trace(tr, none, f).ok());
}

TEST(Diagonalize, SingleRoot) {
  const Fragment f = generate_fragment(3, 5);
  const std::vector<EOracle> es{EOracle::from_nodes({N({})})};
  const DiagTrace tr = diagonalize(es, f, 4);
  ASSERT_EQ(tr.rounds.size(), 1u);
  EXPECT_EQ(tr.rounds[0].u, N({1}));
  EXPECT_EQ(tr.status, DiagStatus::escaped);
  EXPECT_TRUE(verify_trace(tr, es, f).ok());
}

TEST(Diagonalize, RoundBudget) {
  const Fragment f = generate_fragment(3, 5);
  const auto es = hand_traced();
  try {
    diagonalize(es, f, 1);
    FAIL();
  } catch (const RoundBudgetExceeded& e) {
    EXPECT_EQ(e.code(), ErrorCode::round_budget_exceeded);
    EXPECT_EQ(e.partial().rounds.size(), 1u);
  }
}

TEST(Diagonalize, Deterministic) {
  const Fragment f = generate_fragment(4, 6);
  const auto es = hand_traced();
  const DiagTrace a = diagonalize(es, f, 8);
  const DiagTrace b = diagonalize(es, f, 8);
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t j = 0; j < a.rounds.size(); ++j) {
    EXPECT_EQ(a.rounds[j].u, b.rounds[j].u);
    EXPECT_EQ(a.rounds[j].survivors, b.rounds[j].survivors);
  }
}

TEST(VerifyTrace, Mutations) {
  const Fragment f = generate_fragment(3, 5);
  const auto es = hand_traced();
  const DiagTrace good = diagonalize(es, f, 8);

  DiagTrace l_is_k = good;
  l_is_k.rounds[0].l = 0;
  l_is_k.rounds[0].u = N({0});
  EXPECT_FALSE(verify_trace(l_is_k, es, f).ok());

  DiagTrace leaky = good;
  leaky.rounds[0].survivors->push_back(N({1, 0}));
  const TraceReport rep = verify_trace(leaky, es, f);
  ASSERT_FALSE(rep.ok());

  const DiagTrace mutant = diagonalize(es, f, 8, SurvivorRule::ignore_k_exclusion);
  EXPECT_FALSE(verify_trace(mutant, es, f).ok());

  DiagTrace unordered = good;
  std::swap(unordered.rounds[0], unordered.rounds[1]);
  EXPECT_FALSE(verify_trace(unordered, es, f).ok());
}

TEST(VerifyTrace, SurvivorsExtendWithDescentOne) {
  const Fragment f = generate_fragment(4, 6);
  const auto es = hand_traced();
  const DiagTrace tr = diagonalize(es, f, 8);
  std::vector<Value> ks;
  for (const DiagRound& r : tr.rounds) {
    ASSERT_TRUE(r.survivors.has_value());
    ks.push_back(r.k);
    for (const Node& v : *r.survivors) {
      EXPECT_EQ(ell(r.t, v), 1u);
      EXPECT_EQ(v[r.t.length()], r.l);
      for (Value k : ks) EXPECT_FALSE(v.has_value(k));
    }
  }
}

TEST(DiagStatus, Names) {
  for (DiagStatus s : {DiagStatus::escaped, DiagStatus::fragment_exhausted, DiagStatus::obstruction_violated}) {
    EXPECT_EQ(parse_diag_status(to_string(s)), s);
  }
  EXPECT_THROW(parse_diag_status("nope"), Error);
}

}  // namespace
}  // namespace treedup
