#include "treedup/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "treedup/diagonal.hpp"
#include "treedup/duplicate.hpp"
#include "treedup/gruenhage.hpp"
#include "treedup/json_io.hpp"
#include "treedup/talagrand.hpp"

namespace treedup {

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::none: return "none";
    case Mutation::drop_v_sign: return "drop_v_sign";
    case Mutation::drop_k_exclusion: return "drop_k_exclusion";
    case Mutation::drop_injectivity: return "drop_injectivity";
  }
  return "none";
}

Mutation parse_mutation(std::string_view name) {
  for (Mutation m : {Mutation::none, Mutation::drop_v_sign, Mutation::drop_k_exclusion, Mutation::drop_injectivity}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::config_invalid, "unknown mutation '" + std::string(name) + "'");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"tau",    "basis", "hausdorff", "scattered",  "subcover", "refine",
                                              "gdelta", "star",  "compactify", "gruenhage", "talagrand"};
  return names;
}

namespace {

using Rng = std::mt19937_64;

struct Recorder {
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  std::vector<std::string> failures;
  bool sampled = false;

  void fail(std::string what) {
    ++failure_count;
    if (failures.size() < kMaxRecordedFailures) failures.push_back(std::move(what));
  }
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (!ok) fail(what());
  }
};

/// Runs explain(k) over [0, count); a returned string marks item k as a counterexample.
template <class Explain>
void check_all(Recorder& rec, Exec exec, std::size_t count, Explain&& explain) {
  const SweepOutcome out = sweep(exec, count, [&](std::size_t k) { return explain(k).has_value(); });
  rec.checked += out.checked;
  rec.failure_count += out.failures;
  if (!out.first_failure) return;
  for (std::size_t k = *out.first_failure; k < count && rec.failures.size() < kMaxRecordedFailures; ++k) {
    std::optional<std::string> why;
    try {
      why = explain(k);
    } catch (const std::exception& e) {
      why = "item " + std::to_string(k) + " threw " + e.what();
    }
    if (why) rec.failures.push_back(std::move(*why));
  }
}

/// Exhaustive index list, or a sorted uniform sample of `budget` indices.
std::optional<std::vector<std::size_t>> maybe_sample(std::size_t count, const SuiteConfig& cfg, Rng& rng,
                                                     Recorder& rec) {
  if (count <= cfg.pair_budget) return std::nullopt;
  rec.sampled = true;
  std::uniform_int_distribution<std::size_t> pick(0, count - 1);
  std::vector<std::size_t> out(cfg.pair_budget);
  for (auto& k : out) k = pick(rng);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t index_of(const std::optional<std::vector<std::size_t>>& sample, std::size_t k) {
  return sample ? (*sample)[k] : k;
}

std::size_t sweep_size(const std::optional<std::vector<std::size_t>>& sample, std::size_t count) {
  return sample ? sample->size() : count;
}

template <class T>
const T& pick_one(const std::vector<T>& items, Rng& rng) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

Sign random_sign(Rng& rng) { return std::bernoulli_distribution(0.5)(rng) ? Sign::plus : Sign::minus; }

/// Root and every proper prefix of t, shortest first.
std::vector<NodeOrRoot> bases_below(const Node& t) {
  std::vector<NodeOrRoot> out{NodeOrRoot::root()};
  for (std::size_t len = 0; len < t.length(); ++len) out.emplace_back(t.prefix(len));
  return out;
}

BasicOpen random_basic_open(const Fragment& frag, Rng& rng) {
  const Node& t = pick_one(frag.nodes(), rng);
  return BasicOpen(pick_one(bases_below(t), rng), t, random_sign(rng));
}

/// Every W(r,t,i) with t in the fragment.
std::vector<BasicOpen> all_basic_opens(const Fragment& frag) {
  std::vector<BasicOpen> out;
  for (const Node& t : frag.nodes()) {
    for (const NodeOrRoot& r : bases_below(t)) {
      for (Sign i : {Sign::plus, Sign::minus}) out.emplace_back(r, t, i);
    }
  }
  return out;
}

std::set<Point> point_set(const std::vector<Point>& pts) { return {pts.begin(), pts.end()}; }


// ---------------------------------------------------------------- tau

std::optional<std::string> tau_pair_failure(const Node& s, const Node& t) {
  const TauSeq seq = tau(s, t);
  const std::string pair = "(" + s.to_string() + "," + t.to_string() + ")";
  if ((seq.empty()) != (s == t)) return "tau" + pair + " empty iff s = t fails";
  if (s == t) return p_value(s, t) == kInfiniteP ? std::nullopt : std::optional<std::string>("p(t,t) is finite");
  if (seq.front() != s.length()) return "tau" + pair + " does not start at dom s";
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (seq[k] >= t.length()) return "tau" + pair + " leaves dom t";
    if (k > 0 && seq[k - 1] >= seq[k]) return "tau" + pair + " positions not increasing";
    if (k > 0 && t[seq[k - 1]] <= t[seq[k]]) return "tau" + pair + " values not decreasing along positions";
  }
  // Independent oracle: left-to-right record minima of t on [dom s, dom t).
  TauSeq records;
  for (std::size_t eta = s.length(); eta < t.length(); ++eta) {
    if (records.empty() || t[eta] < t[records.back()]) records.push_back(eta);
  }
  if (records != seq) return "tau" + pair + " differs from the record-minima oracle";
  if (ell(s, t) < 1) return "ell" + pair + " < 1";
  if (p_value(s, t) != t[seq.back()] || p_value(s, t) > t[s.length()]) return "p" + pair + " out of bounds";
  return std::nullopt;
}

std::optional<std::string> tau_triple_failure(const Node& s, const Node& t, const Node& u) {
  const std::string triple = "(" + s.to_string() + "," + t.to_string() + "," + u.to_string() + ")";
  const bool holds = check_concatenation(s, t, u);
  bool predicted = true;
  if (s != t) {
    Value lowest = std::numeric_limits<Value>::max();
    for (std::size_t eta = s.length(); eta < t.length(); ++eta) lowest = std::min(lowest, u[eta]);
    predicted = t == u || u[t.length()] < lowest;
  }
  if (holds != predicted) return "concatenation" + triple + " disagrees with the first-value criterion";
  if (holds && ell(s, u) != ell(s, t) + ell(t, u)) return "ell additivity fails at " + triple;
  if (t != u) {
    const NodeOrRoot r = local_extension_base(t, u);
    if (in_interval(r, s, t)) {
      if (!holds) return "local extension lemma fails at " + triple;
      if (s != t && p_value(s, u) != p_value(t, u)) return "p(s,u) != p(t,u) at " + triple;
    }
  }
  return std::nullopt;
}

void suite_tau(const SuiteConfig& cfg, const Fragment& frag, Rng&, Recorder& rec, nlohmann::json& details) {
  const auto& nodes = frag.nodes();
  // tree_core invariants
  for (const Node& t : nodes) {
    std::set<Value> seen(t.values().begin(), t.values().end());
    rec.expect(seen.size() == t.length(), [&] { return "node " + t.to_string() + " repeats a value"; });
    for (std::size_t len = 0; len < t.length(); ++len) {
      const Node s = t.prefix(len);
      if (s.empty()) continue;
      rec.expect(antichain_index(s) != antichain_index(t), [&] {
        return "antichain A_" + std::to_string(antichain_index(t)) + " holds comparable " + s.to_string() + " and " +
               t.to_string();
      });
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> triples;
  for (std::size_t iu = 0; iu < nodes.size(); ++iu) {
    const Node& u = nodes[iu];
    for (std::size_t lt = 0; lt <= u.length(); ++lt) {
      const std::size_t it = *frag.index_of(u.prefix(lt));
      pairs.emplace_back(it, iu);
      for (std::size_t ls = 0; ls <= lt; ++ls) triples.emplace_back(*frag.index_of(u.prefix(ls)), it, iu);
    }
  }
  check_all(rec, cfg.exec, pairs.size(),
            [&](std::size_t k) { return tau_pair_failure(nodes[pairs[k].first], nodes[pairs[k].second]); });
  check_all(rec, cfg.exec, triples.size(), [&](std::size_t k) {
    const auto [is, it, iu] = triples[k];
    return tau_triple_failure(nodes[is], nodes[it], nodes[iu]);
  });
  details["comparable_pairs"] = pairs.size();
  details["comparable_triples"] = triples.size();
}

// ---------------------------------------------------------------- basis

void suite_basis(const SuiteConfig& cfg, const Fragment& frag, Rng& rng, Recorder& rec, nlohmann::json& details) {
  const std::vector<Point> pts = fragment_points(frag);
  const std::vector<BasicOpen> opens = all_basic_opens(frag);
  std::vector<std::vector<std::size_t>> around(pts.size());
  std::vector<std::size_t> offset(pts.size() + 1, 0);
  for (std::size_t ip = 0; ip < pts.size(); ++ip) {
    for (std::size_t iw = 0; iw < opens.size(); ++iw) {
      if (contains(opens[iw], pts[ip])) around[ip].push_back(iw);
    }
    offset[ip + 1] = offset[ip] + around[ip].size() * around[ip].size();
  }
  const std::size_t total = offset.back();
  const auto sample = maybe_sample(total, cfg, rng, rec);

  check_all(rec, cfg.exec, sweep_size(sample, total), [&](std::size_t k) -> std::optional<std::string> {
    const std::size_t flat = index_of(sample, k);
    const std::size_t ip = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), flat) - offset.begin()) - 1;
    const std::size_t local = flat - offset[ip];
    const auto& ws = around[ip];
    const BasicOpen& w1 = opens[ws[local / ws.size()]];
    const BasicOpen& w2 = opens[ws[local % ws.size()]];
    const BasicOpen w = refine_intersection(pts[ip], w1, w2);
    const std::string ctx = w.to_string() + " for " + pts[ip].to_string() + " in " + w1.to_string() + " ∩ " + w2.to_string();
    if (!contains(w, pts[ip])) return "refinement misses the point: " + ctx;
    const std::vector<Point> inside = members(w);
    std::set<Point> both;
    for (const Point& x : inside) {
      if (contains(w1, x) && contains(w2, x)) both.insert(x);
    }
    if (both != point_set(inside)) return "refinement leaves the intersection: " + ctx;
    return std::nullopt;
  });
  details["basic_opens"] = opens.size();
  details["triples"] = total;
}

// ---------------------------------------------------------------- separation

void suite_hausdorff(const SuiteConfig& cfg, const Fragment& frag, Rng& rng, Recorder& rec, nlohmann::json& details) {
  const std::vector<Point> pts = fragment_points(frag);
  const PairIndex pairs{pts.size()};
  const auto sample = maybe_sample(pairs.count(), cfg, rng, rec);
  check_all(rec, cfg.exec, sweep_size(sample, pairs.count()), [&](std::size_t k) -> std::optional<std::string> {
    const auto [a, b] = pairs.at(index_of(sample, k));
    const auto [w1, w2] = hausdorff_witness(pts[a], pts[b]);
    const std::string ctx = w1.to_string() + ", " + w2.to_string() + " for " + pts[a].to_string() + ", " + pts[b].to_string();
    if (!contains(w1, pts[a]) || !contains(w2, pts[b])) return "witness misses its point: " + ctx;
    const std::set<Point> left = point_set(members(w1));
    for (const Point& x : members(w2)) {
      if (left.contains(x)) return "witnesses share " + x.to_string() + ": " + ctx;
    }
    return std::nullopt;
  });
  details["point_pairs"] = pairs.count();
}

void suite_scattered(const SuiteConfig& cfg, const Fragment& frag, Rng& rng, Recorder& rec, nlohmann::json& details) {
  const std::vector<Point> pts = fragment_points(frag);
  const std::size_t samples = cfg.samples.value_or(10'000);
  std::vector<std::vector<Point>> subsets;
  subsets.reserve(samples);
  std::uniform_int_distribution<std::size_t> size_of(1, std::min<std::size_t>(pts.size(), 16));
  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<Point> e;
    if (k % 100 == 99) {
      e = pts;
    } else {
      std::sample(pts.begin(), pts.end(), std::back_inserter(e), size_of(rng), rng);
      std::shuffle(e.begin(), e.end(), rng);
    }
    subsets.push_back(std::move(e));
  }
  check_all(rec, cfg.exec, subsets.size(), [&](std::size_t k) -> std::optional<std::string> {
    const auto& e = subsets[k];
    const IsolatedPoint iso = isolated_point(e);
    const std::string ctx = iso.point.to_string() + " via " + iso.neighbourhood.to_string();
    if (std::find(e.begin(), e.end(), iso.point) == e.end()) return "isolated point outside E: " + ctx;
    if (!contains(iso.neighbourhood, iso.point)) return "neighbourhood misses the point: " + ctx;
    for (const Point& x : e) {
      if (x != iso.point && contains(iso.neighbourhood, x)) return "neighbourhood also meets " + x.to_string() + ": " + ctx;
      if (x.node.length() < iso.point.node.length() && precedes(x.node, iso.point.node)) {
        return "node is not tree-minimal in E: " + ctx;
      }
    }
    return std::nullopt;
  });
  details["subsets"] = subsets.size();
}

// ---------------------------------------------------------------- subcover

/// A random basic open around p whose top lies in the fragment.
BasicOpen random_open_around(const Point& p, const Fragment& frag, Rng& rng) {
  std::vector<Node> tops;
  for (const Node& t : frag.nodes()) {
    if (precedes(p.node, t)) tops.push_back(t);
  }
  const Node& t = pick_one(tops, rng);
  std::vector<NodeOrRoot> bases = bases_below(p.node);
  return BasicOpen(pick_one(bases, rng), t, alternate(p.sign, ell(p.node, t)));
}

void suite_subcover(const SuiteConfig& cfg, const Fragment& frag, Rng& rng, Recorder& rec, nlohmann::json& details) {
  struct Instance {
    BasicOpen w;
    std::vector<BasicOpen> cover;
  };
  const std::size_t samples = cfg.samples.value_or(1'000);
  std::vector<Instance> instances;
  std::size_t broken = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    BasicOpen w = random_basic_open(frag, rng);
    std::vector<BasicOpen> cover;
    for (const Point& p : members(w, frag)) cover.push_back(random_open_around(p, frag, rng));
    const std::size_t noise = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t j = 0; j < noise; ++j) cover.push_back(random_basic_open(frag, rng));
    std::shuffle(cover.begin(), cover.end(), rng);
    // A quarter of the instances lose a piece and may stop being covers.
    if (k % 4 == 3) {
      cover.erase(cover.begin() + static_cast<std::ptrdiff_t>(
                                      std::uniform_int_distribution<std::size_t>(0, cover.size() - 1)(rng)));
      ++broken;
    }
    instances.push_back({std::move(w), std::move(cover)});
  }
  check_all(rec, cfg.exec, instances.size(), [&](std::size_t k) -> std::optional<std::string> {
    const Instance& in = instances[k];
    const std::vector<Point> need = members(in.w, frag);
    auto covered_by = [&](const Point& x, const std::vector<BasicOpen>& fam) {
      return std::any_of(fam.begin(), fam.end(), [&](const BasicOpen& c) { return contains(c, x); });
    };
    try {
      const std::vector<BasicOpen> sub = chain_subcover(in.w, in.cover, frag);
      for (const BasicOpen& c : sub) {
        if (std::find(in.cover.begin(), in.cover.end(), c) == in.cover.end()) {
          return "subcover of " + in.w.to_string() + " uses " + c.to_string() + " from outside the cover";
        }
      }
      for (const Point& x : need) {
        if (!covered_by(x, sub)) return "subcover of " + in.w.to_string() + " misses " + x.to_string();
      }
    } catch (const NotACover& e) {
      if (std::find(need.begin(), need.end(), e.witness()) == need.end() || covered_by(e.witness(), in.cover)) {
        return "bogus NotACover witness " + e.witness().to_string() + " for " + in.w.to_string();
      }
    }
    return std::nullopt;
  });
  details["covers"] = instances.size();
  details["perturbed_covers"] = broken;
}

// ---------------------------------------------------------------- refine

/// An open set projecting onto (r, t]: consecutive runs of the chain, each a
/// basic open with a random sign.
OpenSet random_aligned_open(const NodeOrRoot& r, const Node& t, Rng& rng) {
  std::vector<Node> chain;
  for (std::size_t len = static_cast<std::size_t>(r.level() + 1); len <= t.length(); ++len) chain.push_back(t.prefix(len));
  OpenSet u;
  NodeOrRoot base = r;
  std::size_t at = 0;
  while (at < chain.size()) {
    const std::size_t run = std::uniform_int_distribution<std::size_t>(1, chain.size() - at)(rng);
    const Node& top = chain[at + run - 1];
    u.pieces.emplace_back(base, top, random_sign(rng));
    base = top;
    at += run;
  }
  return u;
}

void suite_refine(const SuiteConfig& cfg, const Fragment& frag, Rng& rng, Recorder& rec, nlohmann::json& details) {
  struct Instance {
    OpenSet u;
    OpenSet v;
  };
  const std::size_t samples = cfg.samples.value_or(1'000);
  std::vector<Instance> instances;
  for (std::size_t k = 0; k < samples; ++k) {
    const Node& t = pick_one(frag.nodes(), rng);
    const NodeOrRoot r = pick_one(bases_below(t), rng);
    instances.push_back({random_aligned_open(r, t, rng), random_aligned_open(r, t, rng)});
  }
  check_all(rec, cfg.exec, instances.size(), [&](std::size_t k) -> std::optional<std::string> {
    const Instance& in = instances[k];
    const AlignedRefinement out = refine_pair(in.u, in.v, frag);
    const std::string ctx = "instance " + std::to_string(k) + " (" + std::to_string(in.u.pieces.size()) + "+" +
                            std::to_string(in.v.pieces.size()) + " pieces)";
    if (out.left.size() != out.right.size()) return "unaligned piece counts: " + ctx;
    std::set<Point> left_union;
    std::set<Point> right_union;
    for (std::size_t j = 0; j < out.left.size(); ++j) {
      const BasicOpen& a = out.left[j];
      const BasicOpen& b = out.right[j];
      if (!(a.r() == b.r()) || a.t() != b.t()) return "piece " + std::to_string(j) + " projects differently: " + ctx;
      const auto ma = members(a, frag);
      const auto mb = members(b, frag);
      const bool equal = ma == mb;
      const bool disjoint = std::none_of(ma.begin(), ma.end(), [&](const Point& x) {
        return std::find(mb.begin(), mb.end(), x) != mb.end();
      });
      if (!equal && !disjoint) return "piece " + std::to_string(j) + " is neither equal nor disjoint: " + ctx;
      for (const Point& x : ma) {
        if (!left_union.insert(x).second) return "left pieces overlap at " + x.to_string() + ": " + ctx;
      }
      right_union.insert(mb.begin(), mb.end());
    }
    if (left_union != point_set(members(in.u, frag))) return "left pieces do not rebuild U: " + ctx;
    if (right_union != point_set(members(in.v, frag))) return "right pieces do not rebuild V: " + ctx;
    return std::nullopt;
  });
  details["pairs"] = instances.size();
}

// ---------------------------------------------------------------- G_δ and ☆

PValue effective_p_max(const SuiteConfig& cfg, const Fragment& frag) {
  return cfg.p_max.value_or(static_cast<PValue>(frag.max_value()) + 2);
}

VMembership membership_rule(const SuiteConfig& cfg) {
  return cfg.mutation == Mutation::drop_v_sign ? VMembership::ignore_sign : VMembership::standard;
}

void suite_gdelta(const SuiteConfig& cfg, const Fragment& frag, Rng& rng, Recorder& rec, nlohmann::json& details) {
  const std::size_t npts = 2 * frag.size();
  const auto sample = maybe_sample(PairIndex{npts}.count(), cfg, rng, rec);
  const PValue p_max = effective_p_max(cfg, frag);
  const GdeltaReport g = verify_gdelta(frag, p_max, cfg.exec, membership_rule(cfg), sample ? &*sample : nullptr);
  rec.checked += g.pairs_checked + g.vsets_checked;
  rec.failure_count += g.failures;
  if (g.counterexample) {
    const auto& c = *g.counterexample;
    rec.failures.push_back(c.reason + ": " + c.a.to_string() + ", " + c.b.to_string() + " in " + c.v.to_string());
  }

  // The proof's bound on the threshold: p* <= u2(dom u1) + 1.
  const auto& nodes = frag.nodes();
  for (const Node& u2 : nodes) {
    for (std::size_t len = 0; len < u2.length(); ++len) {
      const Node u1 = u2.prefix(len);
      for (Sign i : {Sign::plus, Sign::minus}) {
        for (Sign j : {Sign::plus, Sign::minus}) {
          const PValue p = separating_threshold({u1, i}, {u2, j});
          rec.expect(p <= static_cast<PValue>(u2[len]) + 1, [&] {
            return "threshold " + std::to_string(p) + " exceeds u2(dom u1)+1 for " + u1.to_string() + " ≺ " + u2.to_string();
          });
        }
      }
    }
  }
  details["p_max"] = p_max;
  details["pairs_checked"] = g.pairs_checked;
  details["vsets_checked"] = g.vsets_checked;
}

void report_star(const StarReport& s, const StarSequence& seq, const Fragment& frag, Recorder& rec) {
  rec.checked += s.pairs_checked;
  rec.failure_count += s.failures;
  if (s.failing_pair) {
    auto name = [&](std::size_t id) {
      return seq.infinity && id == *seq.infinity ? std::string("∞") : point_at(frag, id).to_string();
    };
    rec.failures.push_back("no family separates " + name(s.failing_pair->first) + " and " + name(s.failing_pair->second));
  }
}

void suite_star(const SuiteConfig& cfg, const Fragment& frag, Rng& rng, Recorder& rec, nlohmann::json& details,
                bool compactify) {
  StarSequence seq = star_from_gdelta(frag, effective_p_max(cfg, frag), membership_rule(cfg));
  if (compactify) seq = extend_to_compactification(seq, frag);
  const auto sample = maybe_sample(PairIndex{seq.universe}.count(), cfg, rng, rec);
  report_star(verify_star(seq, cfg.exec, sample ? &*sample : nullptr), seq, frag, rec);
  details["families"] = seq.families.size();
  details["universe"] = seq.universe;
  if (seq.infinity) details["infinity"] = *seq.infinity;
}

// ---------------------------------------------------------------- gruenhage

Candidate random_candidate(const Fragment& frag, Rng& rng) {
  const std::size_t total = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, total)(rng);
  Candidate c;
  c.opens.resize(n);
  for (std::size_t k = 0; k < total; ++k) {
    const std::size_t target = k < n ? k : std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    c.opens[target].pieces.push_back(random_basic_open(frag, rng));
  }
  return c;
}

std::optional<std::string> eset_failure(const ESet& e, const Candidate& c, const Fragment& frag) {
  const OpenSet& u = c.opens.at(e.n - 1);
  for (const Node& t : e.nodes) {
    if (!u.contains({t, e.i}) || u.contains({t, -e.i})) return e.label() + " holds unsplit node " + t.to_string();
    const NodeOrRoot& theta = e.theta.at(t);
    if (!strictly_precedes(theta, t) || antichain_index(theta) != e.m) {
      return e.label() + " has a misplaced theta for " + t.to_string();
    }
    for (const Point& x : members(BasicOpen(theta, t, e.i), frag)) {
      if (!u.contains(x)) return e.label() + ": W(theta,t,i) leaves U_n at " + x.to_string();
    }
  }
  if (const auto bad = equal_theta_violations(e); !bad.empty()) {
    return e.label() + " has odd ell(" + bad.front().first.to_string() + "," + bad.front().second.to_string() +
           ") with equal theta";
  }
  return std::nullopt;
}

std::optional<std::string> dichotomy_failure(const Candidate& c, const std::vector<ESet>& esets, const Fragment& frag) {
  std::set<Node> split;
  for (const ESet& e : esets) split.insert(e.nodes.begin(), e.nodes.end());
  const std::vector<Node> open = uncovered_nodes(c, frag);
  for (const Node& t : open) {
    if (split.contains(t)) return "node " + t.to_string() + " is both split and uncovered";
  }
  if (split.size() + open.size() != frag.size()) return "some node is neither split nor uncovered";
  return std::nullopt;
}

std::optional<std::string> hand_traced_example_failure() {
  const Fragment frag = generate_fragment(3, 5);
  const std::vector<EOracle> esets{
      EOracle::from_nodes({Node{}}, "E_1"),
      EOracle::from_predicate([](const Node& t) { return t.has_value(2); }, "E_2")};
  const DiagTrace trace = diagonalize(esets, frag, 8);
  const std::vector<std::tuple<std::size_t, Node, Value, Value, Node>> expected{
      {1, Node{}, 0, 1, Node::from_values({1})},
      {2, Node::from_values({1, 2}), 3, 4, Node::from_values({1, 2, 4})}};
  if (trace.rounds.size() != expected.size()) return "hand-traced game ran " + std::to_string(trace.rounds.size()) + " rounds";
  for (std::size_t j = 0; j < expected.size(); ++j) {
    const DiagRound& r = trace.rounds[j];
    if (std::tie(r.m, r.t, r.k, r.l, r.u) != expected[j]) return "hand-traced game differs in round " + std::to_string(j + 1);
  }
  if (const TraceReport rep = verify_trace(trace, esets, frag, Exec::serial); !rep.ok()) {
    return "hand-traced trace rejected: " + *rep.failure;
  }
  return std::nullopt;
}

void suite_gruenhage(const SuiteConfig& cfg, const Fragment& frag, Rng& rng, Recorder& rec, nlohmann::json& details) {
  if (auto bad = hand_traced_example_failure(); bad) {
    rec.fail(*bad);
  }
  ++rec.checked;

  const SurvivorRule rule =
      cfg.mutation == Mutation::drop_k_exclusion ? SurvivorRule::ignore_k_exclusion : SurvivorRule::standard;
  const std::size_t families = cfg.samples.value_or(100);
  std::size_t rounds_played = 0;
  std::size_t escaped = 0;
  std::size_t exhausted = 0;
  for (std::size_t k = 0; k < families; ++k) {
    const Candidate c = random_candidate(frag, rng);
    const std::vector<ESet> esets = decompose(c, frag);
    for (const ESet& e : esets) {
      const auto bad = eset_failure(e, c, frag);
      rec.expect(!bad, [&] { return "candidate " + std::to_string(k) + ": " + *bad; });
    }
    const auto split = dichotomy_failure(c, esets, frag);
    rec.expect(!split, [&] { return "candidate " + std::to_string(k) + ": " + *split; });

    const std::vector<EOracle> oracles = flatten(esets);
    try {
      const DiagTrace trace = diagonalize(oracles, frag, cfg.rounds, rule);
      const TraceReport rep = verify_trace(trace, oracles, frag, cfg.exec);
      rec.checked += rep.checked;
      rec.expect(rep.ok(), [&] { return "family " + std::to_string(k) + ": " + *rep.failure; });
      rounds_played += trace.rounds.size();
      escaped += trace.status == DiagStatus::escaped;
      exhausted += trace.status == DiagStatus::fragment_exhausted;
    } catch (const RoundBudgetExceeded& e) {
      rec.fail("family " + std::to_string(k) + ": " + e.what());
    }
  }
  details["families"] = families;
  details["rounds_played"] = rounds_played;
  details["escaped"] = escaped;
  details["fragment_exhausted"] = exhausted;
}

// ---------------------------------------------------------------- talagrand

FinSuppFn random_fin_supp_fn(const Fragment& frag, Rng& rng) {
  static const double kGrid[] = {1.0, -1.0, 0.5, -0.5, 0.25, -0.25, 2.0, 0.75, -0.75, 1e-3};
  std::uniform_real_distribution<double> real(-2.0, 2.0);
  std::bernoulli_distribution from_grid(0.5);
  auto value = [&] { return from_grid(rng) ? kGrid[std::uniform_int_distribution<std::size_t>(0, 9)(rng)] : real(rng); };

  FinSuppFn f;
  const Node& base = pick_one(frag.nodes(), rng);
  f.set({base, random_sign(rng)}, value());
  const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 7)(rng);
  for (std::size_t k = 0; k < extra; ++k) {
    if (std::bernoulli_distribution(0.5)(rng)) {
      // a successor of the base node, possibly outside the fragment
      const Value v = std::uniform_int_distribution<Value>(0, frag.alphabet() + 3)(rng);
      if (!base.has_value(v)) f.set({base.extended(v), random_sign(rng)}, value());
    } else {
      f.set({pick_one(frag.nodes(), rng), random_sign(rng)}, value());
    }
  }
  return f;
}

std::optional<std::string> t_op_failure(const FinSuppFn& f, const Point& p, unsigned n) {
  const std::string ctx = " at " + p.to_string() + ", n=" + std::to_string(n);
  const double t = t_op(f, p, n);
  const double bound = std::ldexp(1.0, -static_cast<int>(n));
  if (!(t >= 0.0 && t <= bound)) return "t_op = " + std::to_string(t) + " outside [0, 2^-n]" + ctx;
  const double v = f.at(p);
  const auto succ = supported_successors(f, p);
  if (v == 0.0 && t != 0.0) return "t_op nonzero where f vanishes" + ctx;
  if (std::any_of(succ.begin(), succ.end(), [&](const auto& qw) { return qw.second == v; }) && t != 0.0) {
    return "t_op nonzero despite an equal successor" + ctx;
  }
  if (succ.empty() && std::ldexp(std::abs(v), static_cast<int>(n)) >= 1.0 && t != bound) {
    return "t_op != 2^-n with no supported successors" + ctx;
  }
  Value cap = 0;
  for (const auto& [q, w] : succ) cap = std::max<Value>(cap, q.node.back() + 1);
  if (t_op_enumerated(f, p, n, cap + 2) != t) return "enumerated product disagrees" + ctx;
  // Locality: f away from p and its successors is irrelevant.
  FinSuppFn g = f;
  const Node child = p.node.extended(min_excluded(p.node, {}));
  g.set({child.extended(min_excluded(child, {})), Sign::minus}, 123.0);
  if (!p.node.empty()) g.set({p.node.parent(), Sign::plus}, -7.0);
  if (t_op(g, p, n) != t) return "t_op depends on values away from (s,i)^+" + ctx;
  return std::nullopt;
}

std::optional<std::string> witness_failure(const FinSuppFn& f) {
  const TalagrandWitness w = talagrand_witness(f);
  const std::string ctx = " for witness " + w.point.to_string() + ", n=" + std::to_string(w.n);
  if (std::abs(f.at(w.point)) != f.sup_norm()) return "witness does not attain the norm" + ctx;
  if (t_op(f, w.point, w.n) == 0.0) return "t_op vanishes" + ctx;
  for (const auto& [q, v] : f.support()) {
    if (std::abs(v) == f.sup_norm() && q.node.length() > w.point.node.length() && precedes(w.point.node, q.node)) {
      return "witness node is not maximal" + ctx;
    }
  }
  return std::nullopt;
}

struct Probe {
  FinSuppFn f;
  FinSuppFn d;
  Point p;
  unsigned n;
};

Probe random_probe(const Fragment& frag, Rng& rng) {
  std::uniform_real_distribution<double> inner(0.6, 0.9);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Probe pr{{}, {}, {pick_one(frag.nodes(), rng), random_sign(rng)}, std::uniform_int_distribution<unsigned>(1, 4)(rng)};
  const double scale = std::ldexp(1.0, -static_cast<int>(pr.n));
  const double v = (std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0) * inner(rng) * scale;
  pr.f.set(pr.p, v);
  pr.d.set(pr.p, unit(rng));
  const std::size_t succ = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  std::set<Value> used;
  for (std::size_t k = 0; k < succ; ++k) {
    const Value x = min_excluded(pr.p.node, used);
    used.insert(x);
    const double a = (std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0) * inner(rng);
    const Point q{pr.p.node.extended(x), random_sign(rng)};
    pr.f.set(q, a * v / (a - scale));  // chosen so the factor argument is a
    pr.d.set(q, unit(rng));
  }
  const Node spare = pr.p.node.extended(min_excluded(pr.p.node, used));
  pr.d.set({spare.extended(min_excluded(spare, {})), Sign::plus}, unit(rng));  // off the formula's arguments

  // Rescale d so every phi/psi argument, and every denominator f(t,j) - f(s,i)
  // relative to itself, moves at unit rate: a step h then stays h-far from the
  // flat-region boundaries, which sit at least 0.1 away.
  const double dv = pr.d.at(pr.p);
  double rate = std::abs(std::ldexp(dv, static_cast<int>(pr.n)));
  for (const auto& [q, w] : supported_successors(pr.f, pr.p)) {
    const double dw = pr.d.at(q);
    rate = std::max(rate, std::abs(scale * (w * dv - v * dw) / ((w - v) * (w - v))));
    rate = std::max(rate, std::abs((dw - dv) / (w - v)));
  }
  if (rate > 0.0) pr.d = FinSuppFn().plus_scaled(pr.d, 1.0 / rate);
  return pr;
}

void suite_talagrand(const SuiteConfig& cfg, const Fragment& frag, Rng& rng, Recorder& rec, nlohmann::json& details) {
  // bump shape
  rec.expect(phi(0.25) == 0.0 && phi(-3.0) == 1.0 && phi(0.75) == 0.5, [] { return "phi misses its anchor values"; });

  // indicator of W(root,(0,1),+1) at ((0,1),+1)
  const BasicOpen w(NodeOrRoot::root(), Node::from_values({0, 1}), Sign::plus);
  const FinSuppFn ind = FinSuppFn::indicator(w);
  for (unsigned n = 1; n <= 10; ++n) {
    const double t = t_op(ind, {w.t(), Sign::plus}, n);
    rec.expect(t == std::ldexp(1.0, -static_cast<int>(n)), [&] {
      return "indicator example: t_op = " + std::to_string(t) + " at n=" + std::to_string(n);
    });
  }

  const std::size_t samples = cfg.samples.value_or(10'000);
  struct Eval {
    std::size_t fn;
    Point p;
    unsigned n;
  };
  std::vector<FinSuppFn> fns;
  std::vector<Eval> evals;
  for (std::size_t k = 0; k < samples; ++k) {
    fns.push_back(random_fin_supp_fn(frag, rng));
    std::vector<Point> at;
    for (const auto& [p, v] : fns.back().support()) {
      at.push_back(p);
      if (!p.node.empty()) at.push_back({p.node.parent(), -p.sign});
    }
    at.push_back({pick_one(frag.nodes(), rng), random_sign(rng)});
    for (const Point& p : at) evals.push_back({k, p, std::uniform_int_distribution<unsigned>(1, 12)(rng)});
  }
  check_all(rec, cfg.exec, evals.size(), [&](std::size_t k) { return t_op_failure(fns[evals[k].fn], evals[k].p, evals[k].n); });
  check_all(rec, cfg.exec, fns.size(), [&](std::size_t k) { return witness_failure(fns[k]); });

  // disjoint step functions: exceptions sit over endpoints
  const std::size_t steps = std::max<std::size_t>(1, samples / 50);
  std::vector<StepFunction> step_fns;
  for (std::size_t k = 0; k < steps; ++k) {
    StepFunction s;
    const std::size_t pieces = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    for (std::size_t j = 0; j < pieces; ++j) s.emplace_back(std::uniform_int_distribution<int>(-3, 3)(rng) * 0.5, random_basic_open(frag, rng));
    step_fns.push_back(split_into_disjoint_pieces(s));
  }
  check_all(rec, cfg.exec, step_fns.size(), [&](std::size_t k) -> std::optional<std::string> {
    const StepFunction& s = step_fns[k];
    const std::set<Node> ends = endpoint_nodes(s);
    for (const Point& x : step_function_neighbor_check(s, frag, 0.25)) {
      if (!ends.contains(x.node)) return "step function " + std::to_string(k) + ": exceptional point " + x.to_string() + " off the endpoints";
    }
    return std::nullopt;
  });

  // smoothness probes
  const std::size_t probes = 100;
  std::vector<Probe> probe_set;
  for (std::size_t k = 0; k < probes; ++k) probe_set.push_back(random_probe(frag, rng));
  std::vector<double> ratios(probes, 0.0);
  check_all(rec, cfg.exec, probe_set.size(), [&](std::size_t k) -> std::optional<std::string> {
    const Probe& pr = probe_set[k];
    const SmoothnessReport r = smoothness_probe(pr.f, pr.p, pr.n, pr.d, 1e-3);
    ratios[k] = r.ratio.value_or(0.0);
    if (!r.ratio || *r.ratio < 3.5 || *r.ratio > 4.5) {
      return "probe " + std::to_string(k) + " at " + pr.p.to_string() + ": error ratio " +
             (r.ratio ? std::to_string(*r.ratio) : std::string("undefined")) + " (errors " + std::to_string(r.err_h) +
             ", " + std::to_string(r.err_half) + ")";
    }
    return std::nullopt;
  });
  details["functions"] = fns.size();
  details["evaluations"] = evals.size();
  details["step_functions"] = step_fns.size();
  details["probes"] = probes;
  details["ratio_min"] = *std::min_element(ratios.begin(), ratios.end());
  details["ratio_max"] = *std::max_element(ratios.begin(), ratios.end());
}

std::size_t fragment_size_bound(std::size_t depth, Value alphabet) {
  std::size_t total = 1;
  std::size_t level = 1;
  for (std::size_t k = 0; k < depth && k < alphabet; ++k) {
    level *= alphabet - k;
    total += level;
    if (total > 5'000'000) return total;
  }
  return total;
}

using SuiteFn = void (*)(const SuiteConfig&, const Fragment&, Rng&, Recorder&, nlohmann::json&);

SuiteFn lookup(std::string_view name) {
  static const std::map<std::string, SuiteFn, std::less<>> table{
      {"tau", suite_tau},
      {"basis", suite_basis},
      {"hausdorff", suite_hausdorff},
      {"scattered", suite_scattered},
      {"subcover", suite_subcover},
      {"refine", suite_refine},
      {"gdelta", suite_gdelta},
      {"star", [](const SuiteConfig& c, const Fragment& f, Rng& r, Recorder& rec, nlohmann::json& d) {
         suite_star(c, f, r, rec, d, false);
       }},
      {"compactify", [](const SuiteConfig& c, const Fragment& f, Rng& r, Recorder& rec, nlohmann::json& d) {
         suite_star(c, f, r, rec, d, true);
       }},
      {"gruenhage", suite_gruenhage},
      {"talagrand", suite_talagrand},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::unknown_suite, "'" + std::string(name) + "'");
  return it->second;
}

}  // namespace

SuiteReport run_suite(std::string_view name, const SuiteConfig& cfg) {
  const SuiteFn fn = lookup(name);
  if (cfg.pair_budget == 0) throw Error(ErrorCode::config_invalid, "pair budget must be positive");
  if (cfg.p_max && *cfg.p_max == 0) throw Error(ErrorCode::config_invalid, "p_max must be at least 1");
  if (fragment_size_bound(cfg.depth, cfg.alphabet) > 5'000'000) {
    throw Error(ErrorCode::config_invalid, "fragment would exceed 5e6 nodes");
  }

  const auto start = std::chrono::steady_clock::now();
  const Fragment frag = generate_fragment(
      cfg.depth, cfg.alphabet,
      cfg.mutation == Mutation::drop_injectivity ? Injectivity::skip_validation : Injectivity::enforce);
  Rng rng(cfg.seed);
  Recorder rec;
  SuiteReport report;
  report.suite = std::string(name);
  report.depth = cfg.depth;
  report.alphabet = cfg.alphabet;
  report.fragment_size = frag.size();
  report.seed = cfg.seed;
  report.mutation = std::string(to_string(cfg.mutation));
  try {
    fn(cfg, frag, rng, rec, report.details);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config_invalid) throw;
    rec.fail(std::string("suite aborted: ") + e.what());
  }
  report.mode = rec.sampled ? "sampled" : "exhaustive";
  report.checked = rec.checked;
  report.failure_count = rec.failure_count;
  report.failures = std::move(rec.failures);
  if (report.failure_count > 0 && report.failures.empty()) report.failures.push_back("unrecorded failure");
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SuiteReport> run_all(const SuiteConfig& cfg) {
  const auto& names = suite_names();
  std::vector<std::optional<SuiteReport>> slots(names.size());
  std::vector<std::exception_ptr> errors(names.size());
  const auto n = static_cast<std::ptrdiff_t>(names.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      slots[static_cast<std::size_t>(k)] = run_suite(names[static_cast<std::size_t>(k)], cfg);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  std::vector<SuiteReport> out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    out.push_back(std::move(*slots[k]));
  }
  return out;
}

nlohmann::json to_json(const SuiteReport& r) {
  return {{"suite", r.suite},
          {"status", r.passed() ? "pass" : "fail"},
          {"fragment", {{"depth", r.depth}, {"alphabet", r.alphabet}, {"nodes", r.fragment_size}}},
          {"mode", r.mode},
          {"checked", r.checked},
          {"failure_count", r.failure_count},
          {"failures", r.failures},
          {"elapsed_ms", r.elapsed_ms},
          {"seed", r.seed},
          {"mutation", r.mutation},
          {"details", r.details}};
}

}  // namespace treedup
