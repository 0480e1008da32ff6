// CLI frontend: monitor / robustness / bench / gen.
// Exit codes: 0 satisfied, 1 violated, 2 error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stlstar/baseline.hpp"
#include "stlstar/generators.hpp"
#include "stlstar/monitor.hpp"
#include "stlstar/oracle.hpp"
#include "stlstar/parser.hpp"
#include "stlstar/report.hpp"
#include "stlstar/robustness.hpp"
#include "stlstar/suite.hpp"
#include "stlstar/trace.hpp"

using namespace stlstar;

namespace {

// --formula accepts either a file path or inline formula text.
std::string load_formula_text(const std::string& arg) {
  std::ifstream in(arg);
  if (!in.good()) return arg;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

void add_stats(RunReport& rep, const MonitorStats& st) {
  rep.add("instantiations", static_cast<long long>(st.instantiations));
  rep.add("outer_iterations", static_cast<long long>(st.outer_iterations));
  rep.add("subupdates", static_cast<long long>(st.subupdates));
  rep.add("constraint_rebuilds", static_cast<long long>(st.constraint_rebuilds));
  rep.add("max_intvl", st.max_intvl);
  rep.add("early_stopped", st.early_stopped);
}

int cmd_monitor(const std::string& formula_arg, const std::string& trace_path,
                const std::string& mode, bool early_stop) {
  std::string ftext = load_formula_text(formula_arg);
  FormulaPtr f = parse_formula(ftext);
  Trace tr = load_csv_file(trace_path);

  RunReport rep;
  rep.add("command", std::string("monitor"));
  rep.add("mode", mode);
  rep.add("early_stop", early_stop);
  rep.add_hash("formula_digest", ftext);
  rep.add_hash("trace_digest", read_file(trace_path));
  rep.add("trace_size", tr.size());

  auto t0 = std::chrono::steady_clock::now();
  bool sat = false;
  if (mode == "oracle") {
    sat = oracle_trace_sat(*f, tr);
  } else {
    SyntaxTree tree(normalize_atoms(f));
    MonitorResult r = mode == "interval" ? monitor(tree, tr, early_stop)
                                         : monitor_baseline(tree, tr, early_stop);
    sat = r.satisfied;
    add_stats(rep, r.stats);
  }
  rep.add("wall_ms", ms_since(t0));
  rep.add("verdict", std::string(sat ? "satisfied" : "violated"));
  std::cout << rep.str();
  return sat ? 0 : 1;
}

int cmd_robustness(const std::string& formula_arg, const std::string& trace_path,
                   double epsilon, const std::string& mode, bool cheap_range) {
  std::string ftext = load_formula_text(formula_arg);
  FormulaPtr f = parse_formula(ftext);
  Trace tr = load_csv_file(trace_path);

  RunReport rep;
  rep.add("command", std::string("robustness"));
  rep.add("mode", mode);
  rep.add("epsilon", epsilon);
  rep.add_hash("formula_digest", ftext);
  rep.add_hash("trace_digest", read_file(trace_path));
  rep.add("trace_size", tr.size());

  auto t0 = std::chrono::steady_clock::now();
  double estimate = 0.0;
  if (mode == "exact" || mode == "oracle") {
    estimate = mode == "exact" ? robustness_baseline(SyntaxTree(f), tr)
                               : oracle_trace_rho(*f, tr);
    rep.add("estimate", estimate);
    rep.add("n_calls", 0);
  } else {
    auto est = robustness(f, tr,
                          epsilon,
                          mode == "interval" ? MonitorMode::Interval
                                             : MonitorMode::Baseline,
                          !cheap_range);
    estimate = est.estimate;
    rep.add("estimate", est.estimate);
    rep.add("range_lo", est.lo);
    rep.add("range_hi", est.hi);
    rep.add("initial_lo", est.initial.lo);
    rep.add("initial_hi", est.initial.hi);
    rep.add("initial_width", est.initial.width());
    rep.add("n_calls", est.n_calls);
  }
  rep.add("wall_ms", ms_since(t0));

  bool sat = mode == "interval" || mode == "baseline"
                 ? (mode == "interval" ? monitor(SyntaxTree(f), tr, true)
                                       : monitor_baseline(SyntaxTree(f), tr, true))
                       .satisfied
                 : estimate > 0.0;
  rep.add("verdict", std::string(sat ? "satisfied" : "violated"));
  std::cout << rep.str();
  return sat ? 0 : 1;
}

int cmd_bench(const std::vector<int>& sizes, const std::vector<std::string>& names,
              const std::vector<std::string>& modes, bool early_stop,
              unsigned seed) {
  std::printf("%-6s %6s %-9s %-5s %-10s %12s %10s %14s %12s\n", "name", "size",
              "mode", "trace", "verdict", "wall_ms", "max_intvl", "instantiations",
              "subupdates");
  for (const auto& name : names) {
    for (int n : sizes) {
      for (const char* which : {"sat", "viol"}) {
        Trace tr = std::string(which) == "sat"
                       ? suite::sat_trace(name, n, seed)
                       : suite::violating_trace(name, n, seed);
        FormulaPtr f = suite::formula(name);
        SyntaxTree tree(normalize_atoms(f));
        for (const auto& mode : modes) {
          auto t0 = std::chrono::steady_clock::now();
          MonitorResult r = mode == "interval"
                                ? monitor(tree, tr, early_stop)
                                : monitor_baseline(tree, tr, early_stop);
          double ms = ms_since(t0);
          std::printf("%-6s %6d %-9s %-5s %-10s %12.2f %10d %14lld %12lld\n",
                      name.c_str(), n, mode.c_str(), which,
                      r.satisfied ? "satisfied" : "violated", ms,
                      r.stats.max_intvl,
                      static_cast<long long>(r.stats.instantiations),
                      static_cast<long long>(r.stats.subupdates));
        }
      }
    }
  }
  return 0;
}

int cmd_gen(const std::string& kind, int n, double noise, bool nonuniform,
            unsigned seed, const std::string& out) {
  Trace tr = generate(trace_kind_from_name(kind), n, noise, nonuniform, seed);
  if (out.empty() || out == "-")
    save_csv(tr, std::cout);
  else
    save_csv_file(tr, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"offline monitor for temporal properties with value freezing"};
  app.require_subcommand(1);

  std::string formula, trace, out, kind = "pulse";
  std::string mode = "interval";
  bool early_stop = false, nonuniform = false, cheap_range = false;
  double epsilon = 0.1, noise = 0.0;
  int n = 100;
  unsigned seed = 1;
  std::vector<int> sizes{500, 1000};
  std::vector<std::string> names{"phi1", "phi2", "phi3"};
  std::vector<std::string> modes{"interval", "baseline"};

  auto* cmon = app.add_subcommand("monitor", "Boolean verdict for a trace");
  cmon->add_option("--formula", formula, "formula file or inline text")->required();
  cmon->add_option("--trace", trace, "trace CSV file")->required();
  cmon->add_option("--mode", mode, "interval|baseline|oracle");
  cmon->add_flag("--early-stop", early_stop, "stop at the first decisive instantiation");

  auto* crob = app.add_subcommand("robustness", "robustness estimate for a trace");
  crob->add_option("--formula", formula, "formula file or inline text")->required();
  crob->add_option("--trace", trace, "trace CSV file")->required();
  crob->add_option("--epsilon", epsilon, "binary search precision")
      ->check(CLI::PositiveNumber);
  crob->add_option("--mode", mode, "interval|baseline|exact|oracle");
  crob->add_flag("--cheap-range", cheap_range,
                 "interval-arithmetic initial range instead of exact extrema");

  auto* cben = app.add_subcommand("bench", "benchmark table on generated traces");
  cben->add_option("--sizes", sizes, "trace sizes");
  cben->add_option("--names", names, "fixture names (phi1..phi4, psi)");
  cben->add_option("--modes", modes, "monitor modes");
  cben->add_flag("--early-stop", early_stop, "enable early stoppage");
  cben->add_option("--seed", seed, "generator seed");

  auto* cgen = app.add_subcommand("gen", "generate a trace CSV");
  cgen->add_option("--kind", kind, "pulse|driftpulse|stabilize|stairs|crossing");
  cgen->add_option("--n", n, "sample count")->check(CLI::PositiveNumber);
  cgen->add_option("--noise", noise, "additive noise amplitude");
  cgen->add_flag("--nonuniform", nonuniform, "random timestamps");
  cgen->add_option("--seed", seed, "generator seed");
  cgen->add_option("--out", out, "output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
    if (cmon->parsed()) return cmd_monitor(formula, trace, mode, early_stop);
    if (crob->parsed())
      return cmd_robustness(formula, trace, epsilon, mode, cheap_range);
    if (cben->parsed()) return cmd_bench(sizes, names, modes, early_stop, seed);
    if (cgen->parsed()) return cmd_gen(kind, n, noise, nonuniform, seed, out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
