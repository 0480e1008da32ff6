// Shared randomized-test machinery: random traces and random formulas whose
// freeze structure is always a nested chain, with a cap on temporal nesting
// so the brute-force reference stays affordable.

#ifndef STLSTAR_TESTS_HELPERS_HPP
#define STLSTAR_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "stlstar/formula.hpp"
#include "stlstar/trace.hpp"

namespace testgen {

using namespace stlstar;

inline Trace random_trace(std::mt19937& rng, int max_n, int dim,
                          bool nonuniform) {
  std::uniform_int_distribution<int> nd(3, max_n);
  std::uniform_real_distribution<double> vd(-5.0, 5.0);
  int n = nd(rng);
  std::vector<double> times, vals;
  if (nonuniform) {
    std::uniform_real_distribution<double> td(0.0, static_cast<double>(n));
    for (int i = 0; i < n; ++i) times.push_back(td(rng));
    std::sort(times.begin(), times.end());
    for (int i = 1; i < n; ++i)
      if (times[static_cast<std::size_t>(i)] <=
          times[static_cast<std::size_t>(i - 1)])
        times[static_cast<std::size_t>(i)] =
            times[static_cast<std::size_t>(i - 1)] + 1e-3;
  } else {
    for (int i = 0; i < n; ++i) times.push_back(static_cast<double>(i));
  }
  for (int i = 0; i < n * dim; ++i) vals.push_back(vd(rng));
  return Trace(std::move(times), std::move(vals), dim);
}

struct FormulaGen {
  std::mt19937& rng;
  int dim;
  int temporal_budget = 3;

  double coef() {
    std::uniform_int_distribution<int> d(-4, 4);
    return static_cast<double>(d(rng));
  }
  int pick(int n) {
    std::uniform_int_distribution<int> d(0, n - 1);
    return d(rng);
  }

  ExprPtr atom_side(const std::vector<FrozenKey>& scope, bool allow_frozen) {
    int sig = 1 + pick(dim);
    ExprPtr e = expr_signal(sig);
    if (allow_frozen && !scope.empty() && pick(2) == 0) {
      FrozenKey k = scope[static_cast<std::size_t>(pick(
          static_cast<int>(scope.size())))];
      int op = pick(3);
      if (op == 0)
        e = expr_binary(ExprOp::Sub, e, expr_frozen(frozen_dim(k), k % 256));
      else if (op == 1)
        e = expr_binary(ExprOp::Add, e, expr_frozen(frozen_dim(k), k % 256));
      else
        e = expr_frozen(frozen_dim(k), k % 256);
    }
    return e;
  }

  FormulaPtr atom(const std::vector<FrozenKey>& scope) {
    CmpOp cmps[] = {CmpOp::LT, CmpOp::LE, CmpOp::GT, CmpOp::GE};
    return make_atom(atom_side(scope, true), cmps[pick(4)],
                     expr_const(coef()));
  }

  TimeWindow window() {
    double los[] = {0.0, 0.0, 1.0, 2.0};
    double lo = los[pick(4)];
    if (pick(4) == 0) return TimeWindow{lo, std::numeric_limits<double>::infinity()};
    return TimeWindow{lo, lo + 1.0 + pick(4)};
  }

  // pending: freeze variables that still must be introduced inside this
  // subformula (deepest-first), keeping the freeze structure a chain.
  FormulaPtr gen(int depth, std::vector<FrozenKey> scope,
                 std::vector<FrozenKey> pending) {
    if (!pending.empty() && (depth <= 1 || pick(3) == 0)) {
      FrozenKey v = pending.front();
      pending.erase(pending.begin());
      scope.push_back(v);
      return make_freeze(frozen_dim(v), v % 256, gen(depth, scope, pending));
    }
    if (depth <= 0 && !pending.empty()) {
      FrozenKey v = pending.front();
      pending.erase(pending.begin());
      scope.push_back(v);
      return make_freeze(frozen_dim(v), v % 256, gen(depth, scope, pending));
    }
    if (depth <= 0) return atom(scope);
    int choice = pick(temporal_budget > 0 ? 7 : 4);
    switch (choice) {
      case 0: return atom(scope);
      case 1: return make_not(gen(depth - 1, scope, pending));
      case 2:
      case 3: {
        // the chain must go down exactly one side
        bool left = pick(2) == 0;
        FormulaPtr a = gen(depth - 1, scope, left ? pending : std::vector<FrozenKey>{});
        FormulaPtr b = gen(depth - 1, scope, left ? std::vector<FrozenKey>{} : pending);
        return choice == 2 ? make_and(a, b) : make_or(a, b);
      }
      case 4:
      case 5: {
        --temporal_budget;
        return make_temporal(choice == 4 ? NodeKind::Always : NodeKind::Eventually,
                             window(), gen(depth - 1, scope, pending));
      }
      default: {
        --temporal_budget;
        bool left = pick(2) == 0;
        FormulaPtr a = gen(depth - 1, scope, left ? pending : std::vector<FrozenKey>{});
        FormulaPtr b = gen(depth - 1, scope, left ? std::vector<FrozenKey>{} : pending);
        return make_temporal(NodeKind::Until, window(), a, b);
      }
    }
  }
};

inline FormulaPtr random_formula(std::mt19937& rng, int dim, int max_depth,
                                 int n_freeze) {
  FormulaGen g{rng, dim};
  std::vector<FrozenKey> pending;
  for (int h = 1; h <= n_freeze; ++h)
    pending.push_back(frozen_key(1 + g.pick(dim), h));
  std::uniform_int_distribution<int> dd(1, max_depth);
  FormulaPtr f = g.gen(dd(rng), {}, pending);
  check_bindings(*f);
  return f;
}

}  // namespace testgen

#endif  // STLSTAR_TESTS_HELPERS_HPP
