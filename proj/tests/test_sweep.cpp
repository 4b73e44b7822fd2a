#include <gtest/gtest.h>

#include <set>

#include "treedup/error.hpp"
#include "treedup/sweep.hpp"

namespace treedup {
namespace {

TEST(Sweep, SerialMatchesParallel) {
  for (std::size_t count : {0u, 1u, 63u, 64u, 1000u, 12345u}) {
    for (std::size_t mod : {1u, 7u, 97u, 100000u}) {
      auto fails = [mod](std::size_t i) { return i % mod == mod - 1; };
      EXPECT_EQ(sweep_serial(count, fails), sweep_parallel(count, fails)) << count << " " << mod;
    }
  }
}

TEST(Sweep, ExceptionsCountAsFailures) {
  auto throws = [](std::size_t i) -> bool {
    if (i == 5) throw std::runtime_error("boom");
    return false;
  };
  const SweepOutcome s = sweep(Exec::serial, 10, throws);
  EXPECT_EQ(s.failures, 1u);
  EXPECT_EQ(s.first_failure, 5u);
  EXPECT_EQ(s, sweep(Exec::parallel, 10, throws));
}

TEST(Sweep, ParseExec) {
  EXPECT_EQ(parse_exec("serial"), Exec::serial);
  EXPECT_EQ(parse_exec("parallel"), Exec::parallel);
  EXPECT_THROW(parse_exec("gpu"), Error);
}

TEST(PairIndex, EnumeratesEveryPairOnce) {
  for (std::size_t n : {0u, 1u, 2u, 5u, 40u}) {
    const PairIndex idx{n};
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < idx.count(); ++k) {
      const auto [a, b] = idx.at(k);
      EXPECT_LT(a, b);
      EXPECT_LT(b, n);
      seen.insert({a, b});
    }
    EXPECT_EQ(seen.size(), idx.count());
  }
}

}  // namespace
}  // namespace treedup
