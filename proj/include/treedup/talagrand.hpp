#pragma once

// Finitely supported functions on the duplicate and the operator
//
//   (T f)(s,i,n) = 0                      if f(s,i) = 0 or f(t,j) = f(s,i) for some (t,j) ∈ (s,i)^+,
//                = 2^-n phi(2^n f(s,i)) Π_{(t,j) ∈ (s,i)^+} psi(2^-n f(t,j) / (f(t,j) - f(s,i)))   otherwise,
//
// where (s,i)^+ = s^+ × {+1,-1} ranges over the immediate successors of s in
// the whole tree. Unsupported successors contribute psi(0) = 1.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "treedup/duplicate.hpp"

namespace treedup {

class FinSuppFn {
 public:
  FinSuppFn() = default;
  /// Entries with value 0 are dropped; repeated points add up.
  static FinSuppFn from_entries(const std::vector<std::pair<Point, double>>& entries);
  /// Value 1 on every member of w.
  static FinSuppFn indicator(const BasicOpen& w);

  double at(const Point& p) const;
  void set(const Point& p, double value);
  const std::map<Point, double>& support() const noexcept { return support_; }
  bool is_zero() const noexcept { return support_.empty(); }
  double sup_norm() const;

  /// this + scale * other
  FinSuppFn plus_scaled(const FinSuppFn& other, double scale) const;

  friend bool operator==(const FinSuppFn&, const FinSuppFn&) = default;

 private:
  std::map<Point, double> support_;
};

// Smooth step h(y) = g(y) / (g(y) + g(1-y)) with g(y) = exp(-1/y).
double phi(double x);
double psi(double x);
double phi_deriv(double x);
double psi_deriv(double x);

struct TOpOptions {
  /// |f(t,j) - f(s,i)| <= tolerance counts as equal in the zero case.
  double equal_tolerance = 0.0;
};

/// Supported immediate successors of p, i.e. support points over s^+.
std::vector<std::pair<Point, double>> supported_successors(const FinSuppFn& f, const Point& p);

/// n >= 1, otherwise config_invalid.
double t_op(const FinSuppFn& f, const Point& p, unsigned n, const TOpOptions& opts = {});
/// Same value, with the product taken over every successor s⌢v, v < succ_cap
/// (factors for unsupported successors are evaluated, not skipped).
double t_op_enumerated(const FinSuppFn& f, const Point& p, unsigned n, Value succ_cap, const TOpOptions& opts = {});

/// Immediate successors of p with |f| >= delta. Throws config_invalid unless delta > 0.
std::set<Point> finitely_many_large_successors(const FinSuppFn& f, const Point& p, double delta);

/// A norm-attaining point over a node with no strictly longer norm-attaining
/// node above it; canonically least among those. Throws zero_function.
Point maximal_norm_attainer(const FinSuppFn& f);

struct TalagrandWitness {
  Point point;
  unsigned n = 1;
  double value = 0.0;
};

/// maximal_norm_attainer with the least n >= 1 such that 2^n |f(p)| >= 1 and
/// every successor argument has absolute value <= 1/2. Throws zero_function.
TalagrandWitness talagrand_witness(const FinSuppFn& f);

/// Finite linear combination Σ c_k 1_{W_k}.
using StepFunction = std::vector<std::pair<double, BasicOpen>>;

FinSuppFn to_function(const StepFunction& step);

/// The same function as a sum over pairwise disjoint basic opens.
StepFunction split_into_disjoint_pieces(const StepFunction& step);

/// Nodes r_k (other than Root) and t_k of the pieces.
std::set<Node> endpoint_nodes(const StepFunction& step);

/// Fragment points (s,i) without an immediate successor (t,j) ∈ (s,i)^+ with
/// |f(s,i) - f(t,j)| < delta. Successors range over all of ω: every value a
/// piece uses plus one fresh value standing in for the rest.
std::set<Point> step_function_neighbor_check(const StepFunction& step, const Fragment& frag, double delta);

struct SmoothnessReport {
  double value = 0.0;
  double analytic = 0.0;
  double diff_h = 0.0;
  double diff_half = 0.0;
  double err_h = 0.0;
  double err_half = 0.0;
  /// err_h / err_half; absent when err_half is exactly 0.
  std::optional<double> ratio;
};

/// Analytic directional derivative of t_op(·, p, n) at f along d (product rule).
double t_op_directional_derivative(const FinSuppFn& f, const Point& p, unsigned n, const FinSuppFn& d);

/// Central differences at h and h/2 against the analytic derivative.
/// Throws zero_at_point when t_op(f,p,n) = 0, config_invalid unless h > 0.
SmoothnessReport smoothness_probe(const FinSuppFn& f, const Point& p, unsigned n, const FinSuppFn& direction,
                                  double h);

}  // namespace treedup
