#include <gtest/gtest.h>

#include <filesystem>

#include "treedup/json_io.hpp"

namespace treedup::io {
namespace {

Node N(std::vector<Value> v) { return Node::from_values(std::move(v)); }
const NodeOrRoot kRoot = NodeOrRoot::root();

TEST(Json, NodeAndOpenRoundTrip) {
  EXPECT_EQ(to_json(N({3, 1})), json::parse("[3,1]"));
  EXPECT_EQ(to_json(kRoot), json("root"));
  EXPECT_EQ(node_from_json(json::parse("[0,2]")), N({0, 2}));
  EXPECT_TRUE(node_or_root_from_json(json("root")).is_root());

  const BasicOpen w(kRoot, N({0, 1}), Sign::plus);
  EXPECT_EQ(to_json(w), json::parse(R"({"r":"root","t":[0,1],"i":1})"));
  EXPECT_EQ(basic_open_from_json(to_json(w)), w);

  const OpenSet u{{w, BasicOpen(N({}), N({2}), Sign::minus)}};
  EXPECT_EQ(open_set_from_json(to_json(u)).pieces, u.pieces);
  const Candidate c{{u, OpenSet{}}};
  EXPECT_EQ(candidate_from_json(to_json(c)).opens.size(), 2u);
}

TEST(Json, Rejections) {
  try {
    node_from_json(json::parse(R"({"x":1})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
  EXPECT_THROW(node_from_json(json::parse("[1,1]")), Error);
  EXPECT_THROW(basic_open_from_json(json::parse(R"({"r":"root","t":[0],"i":2})")), Error);
  EXPECT_THROW(point_from_json(json::parse(R"({"node":[0]})")), Error);
  EXPECT_THROW(star_from_json(json::parse(R"({"families":[[[0,5]]],"universe":2,"infinity":null})")), Error);
}

TEST(Json, FragmentRoundTrip) {
  const Fragment f = generate_fragment(2, 3);
  const Fragment g = fragment_from_json(to_json(f));
  EXPECT_EQ(g.nodes(), f.nodes());
  EXPECT_EQ(g.depth(), f.depth());
  EXPECT_EQ(g.alphabet(), f.alphabet());
}

TEST(Json, FunctionAndTraceRoundTrip) {
  const FinSuppFn f = FinSuppFn::from_entries({{{N({}), Sign::minus}, 0.25}, {{N({4}), Sign::plus}, -3.0}});
  EXPECT_EQ(fin_supp_fn_from_json(to_json(f)), f);

  DiagTrace t;
  t.rounds.push_back({1, N({}), 0, 1, N({1}), std::vector<Node>{N({1})}});
  t.forbidden = {0};
  t.status = DiagStatus::fragment_exhausted;
  const json j = to_json(t);
  EXPECT_EQ(j.at("rounds")[0].at("survivor_count"), 1);
  const DiagTrace back = trace_from_json(j);
  ASSERT_EQ(back.rounds.size(), 1u);
  EXPECT_EQ(back.rounds[0].u, N({1}));
  EXPECT_FALSE(back.rounds[0].survivors.has_value());
  EXPECT_EQ(back.forbidden, t.forbidden);
  EXPECT_EQ(back.status, t.status);
}

TEST(Json, StarRoundTrip) {
  const StarSequence s{{{{0}, {1, 2}}}, 3, 2};
  const StarSequence back = star_from_json(to_json(s));
  EXPECT_EQ(back.families, s.families);
  EXPECT_EQ(back.infinity, s.infinity);
}

TEST(Json, Files) {
  const auto path = std::filesystem::temp_directory_path() / "treedup_json_test.json";
  write_file(path, to_json(N({1, 2})));
  EXPECT_EQ(node_from_json(read_file(path)), N({1, 2}));
  std::filesystem::remove(path);
  EXPECT_THROW(read_file(path), Error);
}

}  // namespace
}  // namespace treedup::io
