// treedup: command-line front end for the verification suites.
//
// Exit codes: 0 all checks pass, 1 counterexample found, 2 usage error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "treedup/json_io.hpp"
#include "treedup/suites.hpp"

namespace {

using treedup::io::json;

constexpr int kPass = 0;
constexpr int kCounterexample = 1;
constexpr int kUsage = 2;

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    treedup::io::write_file(out, j);
  }
}

treedup::Node parse_node_arg(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    throw treedup::Error(treedup::ErrorCode::parse_error, "node must be a JSON array such as [0,1], got " + text);
  }
  return treedup::io::node_from_json(j);
}

treedup::Sign parse_sign_arg(int s) {
  if (s == 1) return treedup::Sign::plus;
  if (s == -1) return treedup::Sign::minus;
  throw treedup::Error(treedup::ErrorCode::parse_error, "sign must be 1 or -1");
}

struct SuiteFlags {
  treedup::SuiteConfig cfg;
  std::optional<std::uint64_t> p_max;
  std::optional<std::size_t> samples;
  std::string mutation = "none";
  std::string exec = "parallel";

  void attach(CLI::App* app) {
    app->add_option("--depth", cfg.depth, "fragment depth")->capture_default_str();
    app->add_option("--alphabet", cfg.alphabet, "fragment alphabet size")->capture_default_str();
    app->add_option("--p-max", p_max, "largest p for the G_delta families (default: max value + 2)");
    app->add_option("--rounds", cfg.rounds, "round budget for the diagonalization game")->capture_default_str();
    app->add_option("--seed", cfg.seed, "seed for every sampled input")->capture_default_str();
    app->add_option("--samples", samples, "override the suite's sample count");
    app->add_option("--pair-budget", cfg.pair_budget, "pair sweeps above this size are sampled")->capture_default_str();
    app->add_option("--mutate", mutation, "negative control: none, drop_v_sign, drop_k_exclusion, drop_injectivity")
        ->capture_default_str();
    app->add_option("--exec", exec, "serial or parallel kernels")->capture_default_str();
  }

  treedup::SuiteConfig resolve() const {
    treedup::SuiteConfig out = cfg;
    out.p_max = p_max;
    out.samples = samples;
    out.mutation = treedup::parse_mutation(mutation);
    out.exec = treedup::parse_exec(exec);
    return out;
  }
};

void print_summary(const json& reports) {
  for (const json& r : reports) {
    std::fprintf(stderr, "%-11s %-4s checked=%-9zu failures=%-5zu %9.1f ms  [%s, seed %llu]\n",
                 r.at("suite").get<std::string>().c_str(), r.at("status").get<std::string>().c_str(),
                 r.at("checked").get<std::size_t>(), r.at("failure_count").get<std::size_t>(),
                 r.at("elapsed_ms").get<double>(), r.at("mode").get<std::string>().c_str(),
                 static_cast<unsigned long long>(r.at("seed").get<std::uint64_t>()));
    for (const json& f : r.at("failures")) std::fprintf(stderr, "    %s\n", f.get<std::string>().c_str());
  }
}

int verdict(const json& reports) {
  for (const json& r : reports) {
    if (r.at("status") != "pass") return kCounterexample;
  }
  return kPass;
}

json run_reports(const std::string& suite, const treedup::SuiteConfig& cfg) {
  json reports = json::array();
  if (suite == "all") {
    for (const auto& r : treedup::run_all(cfg)) reports.push_back(treedup::to_json(r));
  } else {
    reports.push_back(treedup::to_json(treedup::run_suite(suite, cfg)));
  }
  return reports;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive checks for the tree duplicate space"};
  app.require_subcommand(1);
  std::string out;
  app.add_option("--out", out, "write JSON here instead of stdout");

  // gen-fragment
  auto* gen = app.add_subcommand("gen-fragment", "emit the fragment of all injective sequences");
  std::size_t gen_depth = 3;
  treedup::Value gen_alphabet = 4;
  gen->add_option("--depth", gen_depth)->capture_default_str();
  gen->add_option("--alphabet", gen_alphabet)->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "run one suite, or all of them");
  std::string suite;
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  SuiteFlags verify_flags;
  verify_flags.attach(verify);

  // report
  auto* report = app.add_subcommand("report", "run every suite, or summarize saved reports");
  std::string report_in;
  report->add_option("--in", report_in, "JSON reports written by verify");
  SuiteFlags report_flags;
  report_flags.attach(report);

  // gruenhage-game
  auto* game = app.add_subcommand("gruenhage-game", "decompose a candidate and play the diagonalization");
  std::string candidate_path;
  std::string fragment_path;
  std::string trace_path;
  std::size_t game_rounds = 64;
  game->add_option("--candidate", candidate_path)->required()->check(CLI::ExistingFile);
  game->add_option("--fragment", fragment_path)->required()->check(CLI::ExistingFile);
  game->add_option("--rounds", game_rounds)->capture_default_str();
  game->add_option("--trace", trace_path, "verify this trace instead of playing")->check(CLI::ExistingFile);

  // talagrand
  auto* tal = app.add_subcommand("talagrand", "evaluate the operator on a finitely supported function");
  tal->require_subcommand(1);
  std::string fn_path;
  std::string node_text = "[]";
  int sign = 1;
  unsigned n = 1;
  double h = 1e-3;
  std::string direction_path;
  auto* tal_eval = tal->add_subcommand("eval", "t_op at one point");
  auto* tal_witness = tal->add_subcommand("witness", "norm-attaining point with nonzero t_op");
  auto* tal_probe = tal->add_subcommand("probe", "central differences against the analytic derivative");
  for (auto* sub : {tal_eval, tal_witness, tal_probe}) {
    sub->add_option("--fn", fn_path, "FinSuppFn JSON")->required()->check(CLI::ExistingFile);
  }
  for (auto* sub : {tal_eval, tal_probe}) {
    sub->add_option("--node", node_text, "node as a JSON array")->capture_default_str();
    sub->add_option("--sign", sign)->capture_default_str();
    sub->add_option("--n", n)->capture_default_str();
  }
  tal_probe->add_option("--direction", direction_path, "FinSuppFn JSON")->required()->check(CLI::ExistingFile);
  tal_probe->set_help_flag("--help", "Print this help message and exit");  // frees -h for the step size
  tal_probe->add_option("--h", h, "central-difference step")->capture_default_str();

  // tau (debug)
  auto* tau_cmd = app.add_subcommand("tau", "print tau(s,t), ell and p");
  std::string s_text;
  std::string t_text;
  tau_cmd->add_option("--s", s_text)->required();
  tau_cmd->add_option("--t", t_text)->required();

  // --out may follow any subcommand
  for (auto* sub : {gen, verify, report, game, tal, tal_eval, tal_witness, tal_probe, tau_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (gen->parsed()) {
      emit(treedup::io::to_json(treedup::generate_fragment(gen_depth, gen_alphabet)), out);
      return kPass;
    }
    if (verify->parsed()) {
      const json reports = run_reports(suite, verify_flags.resolve());
      emit(reports, out);
      print_summary(reports);
      return verdict(reports);
    }
    if (report->parsed()) {
      const json reports = report_in.empty() ? run_reports("all", report_flags.resolve())
                                             : treedup::io::read_file(report_in);
      if (!reports.is_array()) throw treedup::Error(treedup::ErrorCode::parse_error, "reports must be a JSON array");
      if (report_in.empty()) emit(reports, out);
      print_summary(reports);
      return verdict(reports);
    }
    if (game->parsed()) {
      const auto frag = treedup::io::fragment_from_json(treedup::io::read_file(fragment_path));
      const auto cand = treedup::io::candidate_from_json(treedup::io::read_file(candidate_path));
      const auto esets = treedup::decompose(cand, frag);
      const auto oracles = treedup::flatten(esets);
      json result;
      json uncovered = json::array();
      for (const auto& t : treedup::uncovered_nodes(cand, frag)) uncovered.push_back(treedup::io::to_json(t));
      result["uncovered"] = uncovered;
      json labels = json::array();
      for (const auto& e : esets) labels.push_back({{"label", e.label()}, {"size", e.nodes.size()}});
      result["esets"] = labels;
      treedup::DiagTrace trace;
      if (trace_path.empty()) {
        try {
          trace = treedup::diagonalize(oracles, frag, game_rounds);
        } catch (const treedup::RoundBudgetExceeded& e) {
          result["trace"] = treedup::io::to_json(e.partial());
          result["error"] = e.what();
          emit(result, out);
          return kCounterexample;
        }
      } else {
        trace = treedup::io::trace_from_json(treedup::io::read_file(trace_path));
      }
      const auto rep = treedup::verify_trace(trace, oracles, frag);
      result["trace"] = treedup::io::to_json(trace);
      result["verified"] = rep.ok();
      result["checked"] = rep.checked;
      if (rep.failure) result["trace_invalid"] = *rep.failure;
      emit(result, out);
      return rep.ok() ? kPass : kCounterexample;
    }
    if (tal->parsed()) {
      const auto f = treedup::io::fin_supp_fn_from_json(treedup::io::read_file(fn_path));
      if (tal_witness->parsed()) {
        const auto w = treedup::talagrand_witness(f);
        emit({{"point", treedup::io::to_json(w.point)}, {"n", w.n}, {"value", w.value}}, out);
        return kPass;
      }
      const treedup::Point p{parse_node_arg(node_text), parse_sign_arg(sign)};
      if (tal_eval->parsed()) {
        emit({{"point", treedup::io::to_json(p)}, {"n", n}, {"value", treedup::t_op(f, p, n)}}, out);
        return kPass;
      }
      const auto d = treedup::io::fin_supp_fn_from_json(treedup::io::read_file(direction_path));
      const auto r = treedup::smoothness_probe(f, p, n, d, h);
      json j = {{"point", treedup::io::to_json(p)}, {"n", n},          {"h", h},
                {"value", r.value},                 {"analytic", r.analytic}, {"diff_h", r.diff_h},
                {"diff_half", r.diff_half},         {"err_h", r.err_h},       {"err_half", r.err_half}};
      j["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
      emit(j, out);
      return kPass;
    }
    if (tau_cmd->parsed()) {
      const auto s = parse_node_arg(s_text);
      const auto t = parse_node_arg(t_text);
      const auto p = treedup::p_value(s, t);
      emit({{"tau", treedup::tau(s, t)},
            {"ell", treedup::ell(s, t)},
            {"p", p == treedup::kInfiniteP ? json("infinity") : json(p)}},
           out);
      return kPass;
    }
  } catch (const treedup::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
