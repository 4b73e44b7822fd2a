#include "treedup/talagrand.hpp"

#include <algorithm>
#include <cmath>

#include "treedup/tau.hpp"

namespace treedup {

FinSuppFn FinSuppFn::from_entries(const std::vector<std::pair<Point, double>>& entries) {
  FinSuppFn f;
  for (const auto& [p, v] : entries) f.set(p, f.at(p) + v);
  return f;
}

FinSuppFn FinSuppFn::indicator(const BasicOpen& w) {
  FinSuppFn f;
  for (const Point& p : members(w)) f.set(p, 1.0);
  return f;
}

double FinSuppFn::at(const Point& p) const {
  const auto it = support_.find(p);
  return it == support_.end() ? 0.0 : it->second;
}

void FinSuppFn::set(const Point& p, double value) {
  if (value == 0.0) {
    support_.erase(p);
  } else {
    support_[p] = value;
  }
}

double FinSuppFn::sup_norm() const {
  double norm = 0.0;
  for (const auto& [p, v] : support_) norm = std::max(norm, std::abs(v));
  return norm;
}

FinSuppFn FinSuppFn::plus_scaled(const FinSuppFn& other, double scale) const {
  FinSuppFn out = *this;
  for (const auto& [p, v] : other.support_) out.set(p, out.at(p) + scale * v);
  return out;
}

namespace {

double step_h(double y) {
  return 1.0 / (1.0 + std::exp(1.0 / y - 1.0 / (1.0 - y)));
}

double step_h_deriv(double y) {
  const double h = step_h(y);
  return h * (1.0 - h) * (1.0 / (y * y) + 1.0 / ((1.0 - y) * (1.0 - y)));
}

}  // namespace

double phi(double x) {
  const double a = std::abs(x);
  if (a <= 0.5) return 0.0;
  if (a >= 1.0) return 1.0;
  return step_h(2.0 * a - 1.0);
}

double psi(double x) { return 1.0 - phi(x); }

double phi_deriv(double x) {
  const double a = std::abs(x);
  if (a <= 0.5 || a >= 1.0) return 0.0;
  return (x < 0 ? -2.0 : 2.0) * step_h_deriv(2.0 * a - 1.0);
}

double psi_deriv(double x) { return -phi_deriv(x); }

namespace {

bool is_successor(const Node& s, const Node& t) { return t.length() == s.length() + 1 && precedes(s, t); }

void require_positive_n(unsigned n) {
  if (n == 0) throw Error(ErrorCode::config_invalid, "n must be at least 1");
}

double factor_argument(unsigned n, double w, double v) { return std::ldexp(w / (w - v), -static_cast<int>(n)); }

}  // namespace

std::vector<std::pair<Point, double>> supported_successors(const FinSuppFn& f, const Point& p) {
  std::vector<std::pair<Point, double>> out;
  for (const auto& [q, w] : f.support()) {
    if (is_successor(p.node, q.node)) out.emplace_back(q, w);
  }
  return out;
}

namespace {

template <class Successors>
double t_op_over(double v, unsigned n, const Successors& succ, const TOpOptions& opts) {
  if (v == 0.0) return 0.0;
  for (const auto& [q, w] : succ) {
    if (std::abs(w - v) <= opts.equal_tolerance) return 0.0;
  }
  double value = std::ldexp(phi(std::ldexp(v, static_cast<int>(n))), -static_cast<int>(n));
  for (const auto& [q, w] : succ) value *= psi(factor_argument(n, w, v));
  return value;
}

}  // namespace

double t_op(const FinSuppFn& f, const Point& p, unsigned n, const TOpOptions& opts) {
  require_positive_n(n);
  return t_op_over(f.at(p), n, supported_successors(f, p), opts);
}

double t_op_enumerated(const FinSuppFn& f, const Point& p, unsigned n, Value succ_cap, const TOpOptions& opts) {
  require_positive_n(n);
  std::vector<std::pair<Point, double>> succ;
  for (const Node& t : immediate_successors(p.node, succ_cap)) {
    for (Sign j : {Sign::plus, Sign::minus}) succ.emplace_back(Point{t, j}, f.at({t, j}));
  }
  return t_op_over(f.at(p), n, succ, opts);
}

std::set<Point> finitely_many_large_successors(const FinSuppFn& f, const Point& p, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::config_invalid, "delta must be positive");
  std::set<Point> out;
  for (const auto& [q, w] : supported_successors(f, p)) {
    if (std::abs(w) >= delta) out.insert(q);
  }
  return out;
}

Point maximal_norm_attainer(const FinSuppFn& f) {
  if (f.is_zero()) throw Error(ErrorCode::zero_function, "f vanishes identically");
  const double norm = f.sup_norm();
  std::vector<Point> attainers;
  for (const auto& [p, v] : f.support()) {
    if (std::abs(v) == norm) attainers.push_back(p);
  }
  for (const Point& p : attainers) {  // map order: canonically least first
    const bool maximal = std::none_of(attainers.begin(), attainers.end(), [&](const Point& q) {
      return q.node.length() > p.node.length() && precedes(p.node, q.node);
    });
    if (maximal) return p;
  }
  throw Error(ErrorCode::zero_function, "no maximal norm attainer");  // unreachable: supports are finite
}

TalagrandWitness talagrand_witness(const FinSuppFn& f) {
  const Point p = maximal_norm_attainer(f);
  const double v = f.at(p);
  const auto succ = supported_successors(f, p);
  // Below 2^-1074 every scaled quantity underflows; beyond that no n helps.
  for (unsigned n = 1; n <= 1100; ++n) {
    if (std::ldexp(std::abs(v), static_cast<int>(n)) < 1.0) continue;
    const bool flat = std::all_of(succ.begin(), succ.end(),
                                  [&](const auto& qw) { return std::abs(factor_argument(n, qw.second, v)) <= 0.5; });
    if (flat) return {p, n, t_op(f, p, n)};
  }
  throw Error(ErrorCode::zero_function, "no witness index below 1100 for " + p.to_string());
}

FinSuppFn to_function(const StepFunction& step) {
  FinSuppFn f;
  for (const auto& [c, w] : step) {
    for (const Point& p : members(w)) f.set(p, f.at(p) + c);
  }
  return f;
}

StepFunction split_into_disjoint_pieces(const StepFunction& step) {
  const FinSuppFn f = to_function(step);
  StepFunction out;
  std::set<Point> taken;
  // Longest nodes first, so each run starts at a tree-maximal point of its level set.
  std::vector<std::pair<Point, double>> order(f.support().begin(), f.support().end());
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first.node.length() > b.first.node.length(); });
  for (const auto& [top, c] : order) {
    if (taken.contains(top)) continue;
    taken.insert(top);
    NodeOrRoot base = top.node.empty() ? NodeOrRoot::root() : NodeOrRoot(top.node.parent());
    while (!base.is_root()) {
      const Node& s = base.node();
      const Point below{s, alternate(top.sign, ell(s, top.node))};
      if (taken.contains(below) || f.at(below) != c) break;
      taken.insert(below);
      base = s.empty() ? NodeOrRoot::root() : NodeOrRoot(s.parent());
    }
    out.emplace_back(c, BasicOpen(std::move(base), top.node, top.sign));
  }
  return out;
}

std::set<Node> endpoint_nodes(const StepFunction& step) {
  std::set<Node> out;
  for (const auto& [c, w] : step) {
    out.insert(w.t());
    if (!w.r().is_root()) out.insert(w.r().node());
  }
  return out;
}

std::set<Point> step_function_neighbor_check(const StepFunction& step, const Fragment& frag, double delta) {
  const FinSuppFn f = to_function(step);
  std::set<Value> used;
  for (const auto& [p, v] : f.support()) {
    for (Value x : p.node.values()) used.insert(x);
  }
  std::set<Point> exceptional;
  for (const Point& p : fragment_points(frag)) {
    const double v = f.at(p);
    std::vector<Value> candidates;
    for (Value x : used) {
      if (!p.node.has_value(x)) candidates.push_back(x);
    }
    candidates.push_back(min_excluded(p.node, used));
    const bool near = std::any_of(candidates.begin(), candidates.end(), [&](Value x) {
      const Node t = p.node.extended(x);
      return std::abs(v - f.at({t, Sign::plus})) < delta || std::abs(v - f.at({t, Sign::minus})) < delta;
    });
    if (!near) exceptional.insert(p);
  }
  return exceptional;
}

double t_op_directional_derivative(const FinSuppFn& f, const Point& p, unsigned n, const FinSuppFn& d) {
  require_positive_n(n);
  const double v = f.at(p);
  if (v == 0.0) return 0.0;
  const double dv = d.at(p);
  std::set<Point> succ;
  for (const auto& [q, w] : supported_successors(f, p)) succ.insert(q);
  for (const auto& [q, w] : supported_successors(d, p)) succ.insert(q);

  const double scale = std::ldexp(1.0, -static_cast<int>(n));
  const double x = std::ldexp(v, static_cast<int>(n));
  std::vector<double> factor;
  std::vector<double> factor_deriv;
  for (const Point& q : succ) {
    const double w = f.at(q);
    const double dw = d.at(q);
    const double a = scale * w / (w - v);
    const double da = scale * (w * dv - v * dw) / ((w - v) * (w - v));
    factor.push_back(psi(a));
    factor_deriv.push_back(psi_deriv(a) * da);
  }
  double prod = 1.0;
  for (double y : factor) prod *= y;
  double total = phi_deriv(x) * dv * prod;  // 2^-n * phi'(2^n v) * 2^n dv
  for (std::size_t k = 0; k < factor.size(); ++k) {
    double others = 1.0;
    for (std::size_t l = 0; l < factor.size(); ++l) {
      if (l != k) others *= factor[l];
    }
    total += scale * phi(x) * factor_deriv[k] * others;
  }
  return total;
}

SmoothnessReport smoothness_probe(const FinSuppFn& f, const Point& p, unsigned n, const FinSuppFn& direction,
                                  double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::config_invalid, "h must be positive");
  SmoothnessReport r;
  r.value = t_op(f, p, n);
  if (r.value == 0.0) throw Error(ErrorCode::zero_at_point, "t_op vanishes at " + p.to_string());
  r.analytic = t_op_directional_derivative(f, p, n, direction);
  auto central = [&](double step) {
    return (t_op(f.plus_scaled(direction, step), p, n) - t_op(f.plus_scaled(direction, -step), p, n)) / (2.0 * step);
  };
  r.diff_h = central(h);
  r.diff_half = central(h / 2.0);
  r.err_h = std::abs(r.diff_h - r.analytic);
  r.err_half = std::abs(r.diff_half - r.analytic);
  if (r.err_half != 0.0) r.ratio = r.err_h / r.err_half;
  return r;
}

}  // namespace treedup
