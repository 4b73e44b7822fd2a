#include "treedup/diagonal.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>

namespace treedup {

std::string VSet::to_string() const {
  return "V(" + u.to_string() + "," + (i == Sign::plus ? "+1" : "-1") + "," + std::to_string(p) + ")";
}

bool v_contains(const VSet& v, const Point& x, VMembership rule) {
  if (!precedes(x.node, v.u)) return false;
  if (p_value(x.node, v.u) < v.p) return false;
  if (rule == VMembership::ignore_sign) return true;
  return x.sign == alternate(v.i, ell(x.node, v.u));
}

std::vector<Point> v_members(const VSet& v, const Fragment& frag, VMembership rule) {
  std::vector<Point> out;
  for (std::size_t len = 0; len <= v.u.length(); ++len) {
    Node t = v.u.prefix(len);
    if (!frag.contains(t)) continue;
    for (Sign j : {Sign::plus, Sign::minus}) {
      Point x{t, j};
      if (v_contains(v, x, rule)) out.push_back(std::move(x));
    }
  }
  return out;
}

PValue separating_threshold(const Point& a, const Point& b) {
  if (a == b) throw Error(ErrorCode::equal_points, a.to_string());
  if (a.node == b.node || !comparable(a.node, b.node)) return 1;
  const auto& [lower, upper] = a.node.length() < b.node.length() ? std::tie(a.node, b.node) : std::tie(b.node, a.node);
  return p_value(lower, upper) + 1;
}

namespace {

bool some_v_holds_both(const Fragment& frag, const Point& a, const Point& b, PValue p, VMembership rule) {
  for (const Node& u : frag.nodes()) {
    if (!precedes(a.node, u) || !precedes(b.node, u)) continue;
    for (Sign i : {Sign::plus, Sign::minus}) {
      const VSet v{u, i, p};
      if (v_contains(v, a, rule) && v_contains(v, b, rule)) return true;
    }
  }
  return false;
}

std::optional<VSet> first_v_holding_both(const Fragment& frag, const Point& a, const Point& b, PValue p,
                                         VMembership rule) {
  for (const Node& u : frag.nodes()) {
    for (Sign i : {Sign::plus, Sign::minus}) {
      const VSet v{u, i, p};
      if (v_contains(v, a, rule) && v_contains(v, b, rule)) return v;
    }
  }
  return std::nullopt;
}

// W(r,t,j) ⊆ V over the fragment, with r from the local-extension lemma.
std::optional<std::string> openness_failure(const VSet& v, const Fragment& frag, VMembership rule) {
  for (const Point& x : v_members(v, frag, rule)) {
    NodeOrRoot r = x.node == v.u ? (x.node.empty() ? NodeOrRoot::root() : NodeOrRoot(x.node.parent()))
                                 : local_extension_base(x.node, v.u);
    const BasicOpen w(std::move(r), x.node, x.sign);
    for (const Point& y : members(w, frag)) {
      if (!v_contains(v, y, rule)) {
        return w.to_string() + " around " + x.to_string() + " leaves " + v.to_string() + " at " + y.to_string();
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PValue separating_threshold_in(const Fragment& frag, const Point& a, const Point& b, PValue p_limit,
                               VMembership rule) {
  if (a == b) throw Error(ErrorCode::equal_points, a.to_string());
  for (PValue p = 1; p <= p_limit; ++p) {
    if (!some_v_holds_both(frag, a, b, p, rule)) return p;
  }
  return p_limit + 1;
}

GdeltaReport verify_gdelta(const Fragment& frag, PValue p_max, Exec exec, VMembership rule,
                           const std::vector<std::size_t>* pair_sample) {
  const std::vector<Point> pts = fragment_points(frag);
  const PairIndex pairs{pts.size()};

  PValue needed = 1;
  for (const Node& lo : frag.nodes()) {
    for (const Node& hi : frag.nodes()) {
      if (lo.length() < hi.length() && precedes(lo, hi)) needed = std::max(needed, p_value(lo, hi) + 1);
    }
  }
  if (needed > p_max) {
    throw Error(ErrorCode::config_invalid,
                "p_max " + std::to_string(p_max) + " is below the largest threshold " + std::to_string(needed));
  }

  GdeltaReport report;
  auto pair_of = [&](std::size_t k) { return pairs.at(pair_sample ? (*pair_sample)[k] : k); };
  const SweepOutcome sep = sweep(exec, pair_sample ? pair_sample->size() : pairs.count(), [&](std::size_t k) {
    const auto [ia, ib] = pair_of(k);
    return some_v_holds_both(frag, pts[ia], pts[ib], separating_threshold(pts[ia], pts[ib]), rule);
  });
  report.pairs_checked = sep.checked;
  report.failures += sep.failures;
  if (sep.first_failure) {
    const auto [ia, ib] = pair_of(*sep.first_failure);
    const PValue p = separating_threshold(pts[ia], pts[ib]);
    report.counterexample = GdeltaCounterexample{pts[ia], pts[ib], *first_v_holding_both(frag, pts[ia], pts[ib], p, rule),
                                                 "both points lie in one V at their separating threshold"};
  }

  // VSets indexed as (node, sign, p-1).
  const std::size_t per_node = 2 * static_cast<std::size_t>(p_max);
  auto vset_at = [&](std::size_t k) {
    return VSet{frag.nodes()[k / per_node], (k % per_node) % 2 == 0 ? Sign::plus : Sign::minus,
                static_cast<PValue>((k % per_node) / 2 + 1)};
  };
  const SweepOutcome open = sweep(exec, frag.size() * per_node,
                                  [&](std::size_t k) { return openness_failure(vset_at(k), frag, rule).has_value(); });
  report.vsets_checked = open.checked;
  report.failures += open.failures;
  if (open.first_failure && !report.counterexample) {
    const VSet v = vset_at(*open.first_failure);
    report.counterexample = GdeltaCounterexample{{v.u, v.i}, {v.u, v.i}, v, *openness_failure(v, frag, rule)};
  }
  return report;
}

StarSequence star_from_gdelta(const Fragment& frag, PValue p_max, VMembership rule) {
  StarSequence seq;
  seq.universe = 2 * frag.size();
  for (PValue p = 1; p <= p_max; ++p) {
    Family fam;
    for (const Node& u : frag.nodes()) {
      for (Sign i : {Sign::plus, Sign::minus}) {
        PointSet ids;
        for (const Point& x : v_members(VSet{u, i, p}, frag, rule)) ids.push_back(point_id(frag, x));
        std::sort(ids.begin(), ids.end());
        fam.push_back(std::move(ids));
      }
    }
    seq.families.push_back(std::move(fam));
  }
  return seq;
}

StarSequence extend_to_compactification(const StarSequence& seq, const Fragment& frag) {
  StarSequence out = seq;
  const std::size_t base = 2 * frag.size();
  out.infinity = std::max(seq.universe, base);
  out.universe = *out.infinity + 1;
  PointSet everything(base);
  for (std::size_t id = 0; id < base; ++id) everything[id] = id;
  out.families.push_back(Family{std::move(everything)});
  return out;
}

StarReport verify_star(const StarSequence& seq, Exec exec, const std::vector<std::size_t>* pair_sample) {
  // membership[n][x] = bitmask over the sets of family n that contain x
  std::vector<std::vector<std::vector<std::uint64_t>>> membership;
  membership.reserve(seq.families.size());
  for (const Family& fam : seq.families) {
    const std::size_t w = (fam.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bits(seq.universe, std::vector<std::uint64_t>(w, 0));
    for (std::size_t s = 0; s < fam.size(); ++s) {
      for (std::size_t x : fam[s]) {
        if (x < seq.universe) bits[x][s / 64] |= std::uint64_t{1} << (s % 64);
      }
    }
    membership.push_back(std::move(bits));
  }

  auto separated = [&](std::size_t x, std::size_t y) {
    for (const auto& bits : membership) {
      bool touched = false;
      bool shared = false;
      for (std::size_t k = 0; k < bits[x].size(); ++k) {
        touched = touched || bits[x][k] != 0 || bits[y][k] != 0;
        shared = shared || (bits[x][k] & bits[y][k]) != 0;
      }
      if (touched && !shared) return true;
    }
    return false;
  };

  const PairIndex pairs{seq.universe};
  auto pair_of = [&](std::size_t k) { return pairs.at(pair_sample ? (*pair_sample)[k] : k); };
  const SweepOutcome out = sweep(exec, pair_sample ? pair_sample->size() : pairs.count(), [&](std::size_t k) {
    const auto [x, y] = pair_of(k);
    return !separated(x, y);
  });
  StarReport report;
  report.pairs_checked = out.checked;
  report.failures = out.failures;
  if (out.first_failure) report.failing_pair = pair_of(*out.first_failure);
  return report;
}

}  // namespace treedup
