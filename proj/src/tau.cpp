#include "treedup/tau.hpp"

#include <algorithm>

#include "treedup/error.hpp"

namespace treedup {

namespace {

void require_precedes(const Node& s, const Node& t) {
  if (!precedes(s, t)) {
    throw Error(ErrorCode::not_comparable, s.to_string() + " does not precede " + t.to_string());
  }
}

}  // namespace

TauSeq tau(const Node& s, const Node& t) {
  require_precedes(s, t);
  const std::size_t floor = s.length();
  TauSeq betas;
  std::size_t beta = t.length();
  while (beta > floor) {
    // injectivity makes the argmin unique
    std::size_t arg = floor;
    for (std::size_t xi = floor + 1; xi < beta; ++xi) {
      if (t[xi] < t[arg]) arg = xi;
    }
    betas.push_back(arg);
    beta = arg;
  }
  std::reverse(betas.begin(), betas.end());
  return betas;
}

std::size_t ell(const Node& s, const Node& t) { return tau(s, t).size(); }

PValue p_value(const Node& s, const Node& t) {
  const TauSeq betas = tau(s, t);
  if (betas.empty()) return kInfiniteP;
  return t[betas.back()];
}

NodeOrRoot local_extension_base(const Node& t, const Node& u) {
  require_precedes(t, u);
  if (t == u) {
    throw Error(ErrorCode::not_comparable, "local extension needs " + t.to_string() + " strictly below " + u.to_string());
  }
  if (t.empty()) return NodeOrRoot::root();
  return t.parent();
}

bool check_concatenation(const Node& s, const Node& t, const Node& u) {
  require_precedes(s, t);
  require_precedes(t, u);
  TauSeq joined = tau(s, t);
  const TauSeq upper = tau(t, u);
  joined.insert(joined.end(), upper.begin(), upper.end());
  return tau(s, u) == joined;
}

}  // namespace treedup
