// Brute-force reference semantics.
//
// Literal recursive evaluation of the pointwise satisfaction and robustness
// definitions, with no shared state, no caching and no cleverness. Meant
// for short traces only; everything faster is tested against this.

#ifndef STLSTAR_ORACLE_HPP
#define STLSTAR_ORACLE_HPP

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "formula.hpp"
#include "trace.hpp"

namespace stlstar {

// Environment binding every freeze variable of f to the value of its
// dimension at the first sample. Satisfaction of a trace is evaluated at
// index 0 under this environment.
inline FreezeEnv zero_env(const Formula& f, const Trace& tr) {
  std::vector<FrozenKey> vars;
  collect_freeze_vars(f, vars);
  // Frozen reads can also appear unbound in formulas built directly in
  // tests; bind every referenced key too.
  struct Walk {
    static void run(const Formula& g, std::vector<FrozenKey>& out) {
      if (is_atom(g)) {
        collect_frozen_keys(*g.lhs, out);
        collect_frozen_keys(*g.rhs, out);
        return;
      }
      if (g.left) run(*g.left, out);
      if (g.right) run(*g.right, out);
    }
  };
  std::vector<FrozenKey> used;
  Walk::run(f, used);
  for (FrozenKey k : used)
    if (std::find(vars.begin(), vars.end(), k) == vars.end()) vars.push_back(k);
  FreezeEnv env;
  for (FrozenKey k : vars) env.set(k, tr.value(0, frozen_dim(k)));
  return env;
}

inline bool oracle_sat(const Formula& f, const Trace& tr, int i,
                       const FreezeEnv& env) {
  switch (f.kind) {
    case NodeKind::Atom:
      return cmp_apply(f.cmp, eval_expr(*f.lhs, tr.sample(i), env),
                       eval_expr(*f.rhs, tr.sample(i), env));
    case NodeKind::Not:
      return !oracle_sat(*f.left, tr, i, env);
    case NodeKind::And:
      return oracle_sat(*f.left, tr, i, env) && oracle_sat(*f.right, tr, i, env);
    case NodeKind::Or:
      return oracle_sat(*f.left, tr, i, env) || oracle_sat(*f.right, tr, i, env);
    case NodeKind::Always: {
      for (int j = i; j < tr.size(); ++j) {
        double d = tr.time(j) - tr.time(i);
        if (d > f.window.hi) break;
        if (d < f.window.lo) continue;
        if (!oracle_sat(*f.left, tr, j, env)) return false;
      }
      return true;  // vacuously true when no sample falls in the window
    }
    case NodeKind::Eventually: {
      for (int j = i; j < tr.size(); ++j) {
        double d = tr.time(j) - tr.time(i);
        if (d > f.window.hi) break;
        if (d < f.window.lo) continue;
        if (oracle_sat(*f.left, tr, j, env)) return true;
      }
      return false;
    }
    case NodeKind::Until: {
      for (int j = i; j < tr.size(); ++j) {
        double d = tr.time(j) - tr.time(i);
        if (d > f.window.hi) break;
        if (d < f.window.lo) continue;
        if (!oracle_sat(*f.right, tr, j, env)) continue;
        bool left_ok = true;
        for (int k = i; k < j && left_ok; ++k)
          left_ok = oracle_sat(*f.left, tr, k, env);
        if (left_ok) return true;
      }
      return false;
    }
    case NodeKind::Release: {
      // dual of until: at every window sample j, either the right side
      // holds or the left side held strictly earlier
      for (int j = i; j < tr.size(); ++j) {
        double d = tr.time(j) - tr.time(i);
        if (d > f.window.hi) break;
        if (d < f.window.lo) continue;
        if (oracle_sat(*f.right, tr, j, env)) continue;
        bool released = false;
        for (int k = i; k < j && !released; ++k)
          released = oracle_sat(*f.left, tr, k, env);
        if (!released) return false;
      }
      return true;
    }
    case NodeKind::Freeze: {
      FreezeEnv inner = env;
      inner.set(f.var, tr.value(i, frozen_dim(f.var)));
      return oracle_sat(*f.left, tr, i, inner);
    }
  }
  throw std::logic_error("oracle_sat: bad kind");
}

inline bool oracle_trace_sat(const Formula& f, const Trace& tr) {
  return oracle_sat(f, tr, 0, zero_env(f, tr));
}

inline double oracle_rho(const Formula& f, const Trace& tr, int i,
                         const FreezeEnv& env) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  switch (f.kind) {
    case NodeKind::Atom: {
      double l = eval_expr(*f.lhs, tr.sample(i), env);
      double r = eval_expr(*f.rhs, tr.sample(i), env);
      return (f.cmp == CmpOp::GT || f.cmp == CmpOp::GE) ? l - r : r - l;
    }
    case NodeKind::Not:
      return -oracle_rho(*f.left, tr, i, env);
    case NodeKind::And:
      return std::min(oracle_rho(*f.left, tr, i, env),
                      oracle_rho(*f.right, tr, i, env));
    case NodeKind::Or:
      return std::max(oracle_rho(*f.left, tr, i, env),
                      oracle_rho(*f.right, tr, i, env));
    case NodeKind::Always: {
      double v = kInf;
      for (int j = i; j < tr.size(); ++j) {
        double d = tr.time(j) - tr.time(i);
        if (d > f.window.hi) break;
        if (d < f.window.lo) continue;
        v = std::min(v, oracle_rho(*f.left, tr, j, env));
      }
      return v;
    }
    case NodeKind::Eventually: {
      double v = -kInf;
      for (int j = i; j < tr.size(); ++j) {
        double d = tr.time(j) - tr.time(i);
        if (d > f.window.hi) break;
        if (d < f.window.lo) continue;
        v = std::max(v, oracle_rho(*f.left, tr, j, env));
      }
      return v;
    }
    case NodeKind::Until: {
      double v = -kInf;
      for (int j = i; j < tr.size(); ++j) {
        double d = tr.time(j) - tr.time(i);
        if (d > f.window.hi) break;
        if (d < f.window.lo) continue;
        double w = oracle_rho(*f.right, tr, j, env);
        for (int k = i; k < j; ++k)
          w = std::min(w, oracle_rho(*f.left, tr, k, env));
        v = std::max(v, w);
      }
      return v;
    }
    case NodeKind::Release: {
      double v = kInf;
      for (int j = i; j < tr.size(); ++j) {
        double d = tr.time(j) - tr.time(i);
        if (d > f.window.hi) break;
        if (d < f.window.lo) continue;
        double w = oracle_rho(*f.right, tr, j, env);
        for (int k = i; k < j; ++k)
          w = std::max(w, oracle_rho(*f.left, tr, k, env));
        v = std::min(v, w);
      }
      return v;
    }
    case NodeKind::Freeze: {
      FreezeEnv inner = env;
      inner.set(f.var, tr.value(i, frozen_dim(f.var)));
      return oracle_rho(*f.left, tr, i, inner);
    }
  }
  throw std::logic_error("oracle_rho: bad kind");
}

inline double oracle_trace_rho(const Formula& f, const Trace& tr) {
  return oracle_rho(f, tr, 0, zero_env(f, tr));
}

}  // namespace stlstar

#endif  // STLSTAR_ORACLE_HPP
