// Acceptance criteria 1-9. One PASS/FAIL line each; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "treedup/suites.hpp"

namespace {

using treedup::Mutation;
using treedup::SuiteConfig;
using treedup::SuiteReport;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      note += (note.empty() ? "" : "; ") + why;
    }
  }
};

SuiteConfig fragment(std::size_t depth, treedup::Value alphabet) {
  SuiteConfig cfg;
  cfg.depth = depth;
  cfg.alphabet = alphabet;
  cfg.seed = 20240601;
  return cfg;
}

void expect_pass(Outcome& out, const SuiteReport& r) {
  std::string why = r.suite + " failed";
  if (!r.failures.empty()) why += ": " + r.failures.front();
  out.require(r.passed(), why);
  out.require(r.mode == "exhaustive" || r.suite == "scattered" || r.suite == "subcover", r.suite + " was sampled");
}

std::string counts(const SuiteReport& r) {
  return r.suite + " checked " + std::to_string(r.checked) + " in " + std::to_string(static_cast<long>(r.elapsed_ms)) +
         " ms";
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;  ///< 0 for no limit
  std::function<Outcome()> run;
};

Outcome criterion_tau() {
  Outcome out;
  const auto r = treedup::run_suite("tau", fragment(4, 5));
  expect_pass(out, r);
  out.require(r.fragment_size == 206, "fragment has " + std::to_string(r.fragment_size) + " nodes");
  out.note = "fragment(4,5) has " + std::to_string(r.fragment_size) + " nodes; " +
             std::to_string(r.details.value("comparable_triples", 0)) + " comparable triples; " + counts(r) +
             (out.note.empty() ? "" : "; " + out.note);
  return out;
}

Outcome single(const char* suite, std::size_t depth, treedup::Value alphabet) {
  Outcome out;
  const auto r = treedup::run_suite(suite, fragment(depth, alphabet));
  expect_pass(out, r);
  out.note = counts(r) + (out.note.empty() ? "" : "; " + out.note);
  return out;
}

Outcome several(std::initializer_list<const char*> suites, std::size_t depth, treedup::Value alphabet) {
  Outcome out;
  std::string summary;
  for (const char* s : suites) {
    const auto r = treedup::run_suite(s, fragment(depth, alphabet));
    expect_pass(out, r);
    summary += (summary.empty() ? "" : ", ") + counts(r);
  }
  out.note = summary + (out.note.empty() ? "" : "; " + out.note);
  return out;
}

Outcome criterion_subcover() {
  Outcome out = single("subcover", 3, 4);
  const auto r = treedup::run_suite("subcover", fragment(3, 4));
  out.require(r.details.value("covers", 0) == 1000, "expected 1000 covers");
  return out;
}

Outcome criterion_scattered_hausdorff() {
  Outcome out = several({"hausdorff", "scattered"}, 3, 4);
  const auto r = treedup::run_suite("scattered", fragment(3, 4));
  out.require(r.details.value("subsets", 0) == 10000, "expected 10^4 subsets");
  return out;
}

Outcome criterion_gruenhage() {
  Outcome out;
  const auto r = treedup::run_suite("gruenhage", fragment(4, 6));
  expect_pass(out, r);
  out.require(r.details.value("families", 0) == 100, "expected 100 families");
  out.note = counts(r) + "; " + std::to_string(r.details.value("escaped", 0)) + " escaped, " +
             std::to_string(r.details.value("fragment_exhausted", 0)) + " exhausted, " +
             std::to_string(r.details.value("rounds_played", 0)) + " rounds" + (out.note.empty() ? "" : "; " + out.note);
  return out;
}

Outcome criterion_talagrand() {
  Outcome out;
  const auto r = treedup::run_suite("talagrand", fragment(3, 4));
  expect_pass(out, r);
  out.require(r.details.value("functions", 0) == 10000, "expected 10^4 functions");
  out.require(r.details.value("probes", 0) == 100, "expected 100 probes");
  char buf[96];
  std::snprintf(buf, sizeof buf, "; probe ratios in [%.3f, %.3f]", r.details.value("ratio_min", 0.0),
                r.details.value("ratio_max", 0.0));
  out.note = counts(r) + buf + (out.note.empty() ? "" : "; " + out.note);
  return out;
}

Outcome criterion_mutations() {
  Outcome out;
  std::string summary;
  auto caught = [&](const char* suite, Mutation m, std::size_t depth, treedup::Value alphabet) {
    SuiteConfig cfg = fragment(depth, alphabet);
    cfg.mutation = m;
    const auto r = treedup::run_suite(suite, cfg);
    out.require(!r.passed(), std::string(suite) + " missed " + std::string(treedup::to_string(m)));
    summary += (summary.empty() ? "" : ", ") + std::string(treedup::to_string(m)) + "/" + suite + " -> " +
               std::to_string(r.failure_count);
  };
  caught("gdelta", Mutation::drop_v_sign, 3, 4);
  caught("star", Mutation::drop_v_sign, 3, 4);
  caught("gruenhage", Mutation::drop_k_exclusion, 4, 6);
  caught("tau", Mutation::drop_injectivity, 4, 5);
  out.note = summary + (out.note.empty() ? "" : "; " + out.note);
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "tau calculus over (4,5)", 10, criterion_tau},
      {2, "basis axiom over (3,4)", 30, [] { return single("basis", 3, 4); }},
      {3, "Hausdorff and scattered over (3,4)", 30, criterion_scattered_hausdorff},
      {4, "chain subcovers", 10, criterion_subcover},
      {5, "G_delta diagonal over (3,4)", 60, [] { return single("gdelta", 3, 4); }},
      {6, "star sequences and compactification over (3,4)", 30, [] { return several({"star", "compactify"}, 3, 4); }},
      {7, "diagonalization game over (4,6)", 60, criterion_gruenhage},
      {8, "Talagrand operator", 60, criterion_talagrand},
      {9, "negative controls", 0, criterion_mutations},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.note = std::string("aborted: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      out.ok = false;
      out.note += "; exceeded " + std::to_string(static_cast<int>(c.limit_s)) + " s";
    }
    if (!out.ok) ++failed;
    std::printf("%s criterion %d (%s) [%.2f s]: %s\n", out.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                out.note.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
