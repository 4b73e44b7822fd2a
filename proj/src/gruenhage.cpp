#include "treedup/gruenhage.hpp"

#include <algorithm>
#include <set>

#include "treedup/tau.hpp"

namespace treedup {

std::vector<Node> uncovered_nodes(const Candidate& c, const Fragment& frag) {
  std::vector<Node> out;
  for (const Node& t : frag.nodes()) {
    const bool split = std::any_of(c.opens.begin(), c.opens.end(), [&](const OpenSet& u) {
      return u.contains({t, Sign::plus}) != u.contains({t, Sign::minus});
    });
    if (!split) out.push_back(t);
  }
  return out;
}

std::string ESet::label() const {
  return "E(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",i=" + (i == Sign::plus ? "+1" : "-1") + ")";
}

namespace {

bool base_fits(const NodeOrRoot& r, const Node& t, Sign i, const OpenSet& u, const Fragment& frag) {
  const auto pts = members(BasicOpen(r, t, i), frag);
  return std::all_of(pts.begin(), pts.end(), [&](const Point& x) { return u.contains(x); });
}

NodeOrRoot choose_theta(const Node& t, Sign i, const OpenSet& u, const Fragment& frag, ThetaRule rule) {
  // Valid bases form an up-set of the chain below t.
  std::vector<NodeOrRoot> chain{NodeOrRoot::root()};
  for (std::size_t len = 0; len < t.length(); ++len) chain.emplace_back(t.prefix(len));
  if (rule == ThetaRule::tightest) std::reverse(chain.begin(), chain.end());
  for (const NodeOrRoot& r : chain) {
    if (base_fits(r, t, i, u, frag)) return r;
  }
  throw Error(ErrorCode::no_valid_theta, "no basic neighbourhood of " + Point{t, i}.to_string() + " fits in U");
}

}  // namespace

std::vector<ESet> decompose(const Candidate& c, const Fragment& frag, ThetaRule rule) {
  std::vector<ESet> out;
  for (std::size_t n = 0; n < c.opens.size(); ++n) {
    const OpenSet& u = c.opens[n];
    for (Sign i : {Sign::plus, Sign::minus}) {
      std::map<std::size_t, ESet> buckets;
      for (const Node& t : frag.nodes()) {
        if (!u.contains({t, i}) || u.contains({t, -i})) continue;
        NodeOrRoot theta = choose_theta(t, i, u, frag, rule);
        const std::size_t m = antichain_index(theta);
        auto [it, fresh] = buckets.try_emplace(m);
        if (fresh) {
          it->second.n = n + 1;
          it->second.m = m;
          it->second.i = i;
        }
        it->second.nodes.push_back(t);
        it->second.theta.emplace(t, std::move(theta));
      }
      for (auto& [m, e] : buckets) out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<std::pair<Node, Node>> check_even_ell(const ESet& e) {
  std::vector<std::pair<Node, Node>> out;
  for (const Node& t : e.nodes) {
    for (const Node& u : e.nodes) {
      if (t.length() < u.length() && precedes(t, u) && ell(t, u) % 2 == 1) out.emplace_back(t, u);
    }
  }
  return out;
}

std::vector<std::pair<Node, Node>> equal_theta_violations(const ESet& e) {
  auto out = check_even_ell(e);
  std::erase_if(out, [&](const auto& pr) { return !(e.theta.at(pr.first) == e.theta.at(pr.second)); });
  return out;
}

EOracle EOracle::from_nodes(std::vector<Node> nodes, std::string label) {
  std::sort(nodes.begin(), nodes.end());
  auto shared = std::make_shared<const std::vector<Node>>(std::move(nodes));
  return EOracle([shared](const Node& n) { return std::binary_search(shared->begin(), shared->end(), n); },
                 std::move(label));
}

EOracle EOracle::from_predicate(std::function<bool(const Node&)> pred, std::string label) {
  return EOracle(std::move(pred), std::move(label));
}

std::vector<EOracle> flatten(const std::vector<ESet>& esets) {
  std::vector<EOracle> out;
  out.reserve(esets.size());
  for (const ESet& e : esets) out.push_back(EOracle::from_nodes(e.nodes, e.label()));
  return out;
}

std::string_view to_string(DiagStatus s) {
  switch (s) {
    case DiagStatus::escaped: return "Escaped";
    case DiagStatus::fragment_exhausted: return "FragmentExhausted";
    case DiagStatus::obstruction_violated: return "ObstructionViolated";
  }
  return "Unknown";
}

DiagStatus parse_diag_status(std::string_view s) {
  for (DiagStatus d : {DiagStatus::escaped, DiagStatus::fragment_exhausted, DiagStatus::obstruction_violated}) {
    if (to_string(d) == s) return d;
  }
  throw Error(ErrorCode::parse_error, "unknown trace status '" + std::string(s) + "'");
}

namespace {

// Least m > after (1-based) whose oracle meets `alive`, with the canonically
// least witness; `alive` is kept in canonical order.
std::optional<std::pair<std::size_t, Node>> next_target(std::span<const EOracle> esets, const std::vector<Node>& alive,
                                                        std::size_t after) {
  for (std::size_t m = after + 1; m <= esets.size(); ++m) {
    for (const Node& v : alive) {
      if (esets[m - 1].contains(v)) return std::pair{m, v};
    }
  }
  return std::nullopt;
}

bool meets_any_up_to(std::span<const EOracle> esets, const std::vector<Node>& alive, std::size_t m_max) {
  for (std::size_t m = 1; m <= m_max && m <= esets.size(); ++m) {
    for (const Node& v : alive) {
      if (esets[m - 1].contains(v)) return true;
    }
  }
  return false;
}

std::vector<Node> survivors_of(const std::vector<Node>& alive, const Node& u, Value k, SurvivorRule rule) {
  std::vector<Node> out;
  for (const Node& v : alive) {
    if (!precedes(u, v)) continue;
    if (rule == SurvivorRule::standard && v.has_value(k)) continue;
    out.push_back(v);
  }
  return out;
}

}  // namespace

DiagTrace diagonalize(std::span<const EOracle> esets, const Fragment& frag, std::size_t max_rounds,
                      SurvivorRule rule) {
  DiagTrace trace;
  std::vector<Node> alive = frag.nodes();
  std::set<Value> forbidden;
  std::size_t prev_m = 0;
  bool obstruction = false;

  while (auto target = next_target(esets, alive, prev_m)) {
    if (trace.rounds.size() == max_rounds) {
      trace.status = obstruction ? DiagStatus::obstruction_violated : DiagStatus::escaped;
      throw RoundBudgetExceeded(std::move(trace));
    }
    auto& [m, t] = *target;
    DiagRound round;
    round.m = m;
    round.k = min_excluded(t, forbidden);
    forbidden.insert(round.k);
    round.l = min_excluded(t, forbidden);
    round.u = t.extended(round.l);
    round.t = std::move(t);
    alive = survivors_of(alive, round.u, round.k, rule);
    round.survivors = alive;
    obstruction = obstruction || meets_any_up_to(esets, alive, m);

    trace.forbidden.push_back(round.k);
    prev_m = round.m;
    trace.rounds.push_back(std::move(round));
  }

  if (obstruction) {
    trace.status = DiagStatus::obstruction_violated;
  } else {
    trace.status = alive.empty() ? DiagStatus::fragment_exhausted : DiagStatus::escaped;
  }
  return trace;
}

namespace {

std::optional<std::string> survivor_certificate_failure(const DiagRound& r, const Node& v,
                                                        const std::vector<Value>& forbidden) {
  if (!precedes(r.u, v)) return "does not extend u";
  for (Value k : forbidden) {
    if (v.has_value(k)) return "uses forbidden value " + std::to_string(k);
  }
  const std::size_t d = r.t.length();
  if (tau(r.t, v) != TauSeq{d}) return "tau(t_j, v) is not (dom t_j)";
  if (ell(r.t, v) != 1) return "ell(t_j, v) != 1";
  if (v[d] != r.l) return "v(dom t_j) != l_j";
  for (std::size_t eta = d; eta < v.length(); ++eta) {
    if (v[eta] < r.l) return "value below l_j at position " + std::to_string(eta);
  }
  return std::nullopt;
}

}  // namespace

TraceReport verify_trace(const DiagTrace& trace, std::span<const EOracle> esets, const Fragment& frag, Exec exec) {
  TraceReport report;
  auto fail = [&](std::size_t j, const std::string& what) {
    report.failure = "round " + std::to_string(j + 1) + ": " + what;
    return report;
  };

  std::vector<Node> alive = frag.nodes();
  std::vector<Value> forbidden;
  std::set<Value> forbidden_set;
  std::size_t prev_m = 0;
  std::optional<Value> prev_l;
  bool obstruction_seen = false;
  const bool obstruction_claimed = trace.status == DiagStatus::obstruction_violated;

  for (std::size_t j = 0; j < trace.rounds.size(); ++j) {
    const DiagRound& r = trace.rounds[j];
    if (r.m <= prev_m || r.m > esets.size()) return fail(j, "m_j is not a fresh index above m_{j-1}");
    const auto target = next_target(esets, alive, prev_m);
    if (!target || target->first != r.m) return fail(j, "m_j is not the least index meeting Λ_j");
    if (target->second != r.t) return fail(j, "t_j is not the least node of Λ_j ∩ E_{m_j}");

    if (r.k != min_excluded(r.t, forbidden_set)) return fail(j, "k_j is not min ω \\ (ran t_j ∪ earlier k)");
    forbidden.push_back(r.k);
    forbidden_set.insert(r.k);
    if (r.l == r.k) return fail(j, "l_j coincides with k_j");
    if (r.l != min_excluded(r.t, forbidden_set)) return fail(j, "l_j is not min ω \\ (ran t_j ∪ k_1..k_j)");
    if (prev_l && r.k <= *prev_l) return fail(j, "k_j does not exceed l_{j-1}");
    if (r.u.length() != r.t.length() + 1 || !precedes(r.t, r.u) || r.u.back() != r.l) {
      return fail(j, "u_j is not t_j extended by l_j");
    }

    std::vector<Node> expected = survivors_of(alive, r.u, r.k, SurvivorRule::standard);
    const std::vector<Node>& certified = r.survivors ? *r.survivors : expected;
    const SweepOutcome cert = sweep(exec, certified.size(), [&](std::size_t idx) {
      return survivor_certificate_failure(r, certified[idx], forbidden).has_value();
    });
    report.checked += cert.checked;
    if (cert.first_failure) {
      const Node& v = certified[*cert.first_failure];
      return fail(j, "survivor " + v.to_string() + " " + *survivor_certificate_failure(r, v, forbidden));
    }
    if (r.survivors && *r.survivors != expected) return fail(j, "recorded Λ_{j+1} differs from the rule");

    if (meets_any_up_to(esets, expected, r.m)) {
      if (!obstruction_claimed) return fail(j, "Λ_{j+1} meets some E_m with m <= m_j");
      obstruction_seen = true;
    }

    alive = std::move(expected);
    prev_m = r.m;
    prev_l = r.l;
  }

  if (forbidden != trace.forbidden) return fail(trace.rounds.size() - 1, "forbidden list disagrees with the k_j");
  if (next_target(esets, alive, prev_m)) {
    report.failure = "trace stops while E-members are still reachable";
    return report;
  }
  if (obstruction_claimed && !obstruction_seen) {
    report.failure = "status claims an obstruction but every Λ_{j+1} escapes";
  } else if (!obstruction_claimed) {
    const DiagStatus expected = alive.empty() ? DiagStatus::fragment_exhausted : DiagStatus::escaped;
    if (trace.status != expected) report.failure = "final status should be " + std::string(to_string(expected));
  }
  return report;
}

}  // namespace treedup
