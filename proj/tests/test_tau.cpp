#include <gtest/gtest.h>

#include "treedup/error.hpp"
#include "treedup/tau.hpp"

namespace treedup {
namespace {

Node N(std::vector<Value> v) { return Node::from_values(std::move(v)); }

TEST(Tau, Examples) {
  EXPECT_EQ(tau(N({}), N({3, 1, 2})), (TauSeq{0, 1}));
  EXPECT_EQ(tau(N({3}), N({3, 1, 2})), (TauSeq{1}));
  EXPECT_TRUE(tau(N({3, 1, 2}), N({3, 1, 2})).empty());
  EXPECT_EQ(tau(N({3, 0}), N({3, 0, 5, 2, 4})), (TauSeq{2, 3}));
  EXPECT_THROW(tau(N({1}), N({3, 1})), Error);
}

TEST(Tau, Ell) {
  EXPECT_EQ(ell(N({2, 0}), N({2, 0})), 0u);
  EXPECT_EQ(ell(N({}), N({3, 1, 2})), 2u);
  EXPECT_EQ(ell(N({3, 0}), N({3, 0, 5, 2, 4})), 2u);
  EXPECT_EQ(ell(N({}), N({0})), 1u);
}

TEST(Tau, PValue) {
  EXPECT_EQ(p_value(N({3}), N({3, 1, 2})), 1u);
  EXPECT_EQ(p_value(N({3, 0}), N({3, 0, 5, 2, 4})), 2u);
  EXPECT_EQ(p_value(N({4}), N({4})), kInfiniteP);
}

TEST(Tau, LocalExtensionBase) {
  EXPECT_TRUE(local_extension_base(N({}), N({3, 1, 2})).is_root());
  EXPECT_EQ(local_extension_base(N({3}), N({3, 1, 2})), NodeOrRoot(N({})));
  EXPECT_EQ(local_extension_base(N({3, 1}), N({3, 1, 2})), NodeOrRoot(N({3})));
  EXPECT_THROW(local_extension_base(N({3}), N({3})), Error);
  EXPECT_THROW(local_extension_base(N({2}), N({3, 1})), Error);
}

TEST(Tau, Concatenation) {
  EXPECT_TRUE(check_concatenation(N({}), N({3}), N({3, 1, 2})));
  EXPECT_TRUE(check_concatenation(N({3}), N({3}), N({3, 1, 2})));
  EXPECT_FALSE(check_concatenation(N({}), N({0}), N({0, 1})));
}

// Properties over every comparable pair and triple of a fragment.
class TauProperty : public ::testing::TestWithParam<std::pair<std::size_t, Value>> {};

TEST_P(TauProperty, SequenceInvariants) {
  const Fragment f = generate_fragment(GetParam().first, GetParam().second);
  for (const Node& t : f.nodes()) {
    for (std::size_t len = 0; len < t.length(); ++len) {
      const Node s = t.prefix(len);
      const TauSeq seq = tau(s, t);
      ASSERT_FALSE(seq.empty());
      EXPECT_EQ(seq.front(), s.length());
      EXPECT_GE(ell(s, t), 1u);
      for (std::size_t k = 1; k < seq.size(); ++k) {
        EXPECT_LT(seq[k - 1], seq[k]);
        EXPECT_GT(t[seq[k - 1]], t[seq[k]]);
      }
      EXPECT_LT(seq.back(), t.length());
      EXPECT_LE(p_value(s, t), t[s.length()]);
    }
  }
}

TEST_P(TauProperty, LocalExtensionLemma) {
  const Fragment f = generate_fragment(GetParam().first, GetParam().second);
  for (const Node& u : f.nodes()) {
    for (std::size_t lt = 0; lt < u.length(); ++lt) {
      const Node t = u.prefix(lt);
      const NodeOrRoot r = local_extension_base(t, u);
      for (std::size_t ls = 0; ls <= lt; ++ls) {
        const Node s = t.prefix(ls);
        const bool holds = check_concatenation(s, t, u);
        if (holds) EXPECT_EQ(ell(s, u), ell(s, t) + ell(t, u));
        if (strictly_precedes(r, s)) {
          EXPECT_TRUE(holds) << s.to_string() << t.to_string() << u.to_string();
          if (s != t) EXPECT_EQ(p_value(s, u), p_value(t, u));
        }
        // The identity holds exactly when u(dom t) undercuts t on [dom s, dom t).
        bool predicted = true;
        for (std::size_t eta = ls; eta < lt; ++eta) predicted = predicted && u[lt] < u[eta];
        EXPECT_EQ(holds, predicted);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fragments, TauProperty,
                         ::testing::Values(std::pair<std::size_t, Value>{3, 4}, std::pair<std::size_t, Value>{4, 5},
                                           std::pair<std::size_t, Value>{5, 6}));

}  // namespace
}  // namespace treedup
