// Quantitative robustness.
//
// rho_baseline: exact robustness degree at (index 0, zero environment) by
// the same instantiation sweep as the boolean baseline, with monotone-deque
// sliding min/max for the windowed operators and a backward recursion for
// untimed until, so each pass stays linear in the trace.
//
// robustness(): binary search over the conservative range. Each probe
// monitors the threshold-transformed formula; a true verdict raises the
// lower bound, a false verdict lowers the upper bound, and the search stops
// when the bracket is within epsilon. Needs ceil(log2(width/epsilon))
// monitor calls.

#ifndef STLSTAR_ROBUSTNESS_HPP
#define STLSTAR_ROBUSTNESS_HPP

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <vector>

#include "baseline.hpp"
#include "monitor.hpp"
#include "oracle.hpp"
#include "syntax_tree.hpp"

namespace stlstar {

// Sliding min (or max) over per-index windows [lo[i], hi[i]] (inclusive,
// lo[i] > hi[i] means empty). Windows must advance monotonically. Empty
// windows yield +inf for min and -inf for max.
inline std::vector<double> sliding_window_extremum(
    const std::vector<double>& vals, const std::vector<int>& lo,
    const std::vector<int>& hi, bool take_min) {
  int n = static_cast<int>(vals.size());
  std::vector<double> out(static_cast<std::size_t>(lo.size()));
  std::deque<int> dq;  // indices, values monotone
  int next = 0;
  auto better = [&](double a, double b) { return take_min ? a <= b : a >= b; };
  for (std::size_t i = 0; i < lo.size(); ++i) {
    int l = lo[i], h = hi[i];
    while (next <= h && next < n) {
      while (!dq.empty() &&
             better(vals[static_cast<std::size_t>(next)],
                    vals[static_cast<std::size_t>(dq.back())]))
        dq.pop_back();
      dq.push_back(next);
      ++next;
    }
    while (!dq.empty() && dq.front() < l) dq.pop_front();
    if (l > h || dq.empty())
      out[i] = take_min ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
    else
      out[i] = vals[static_cast<std::size_t>(dq.front())];
  }
  return out;
}

// Exact robustness of the trace (index 0, zero environment).
class RhoBaseline {
public:
  RhoBaseline(const SyntaxTree& tree, const Trace& tr) : tree_(tree), tr_(tr) {
    n_ = tr.size();
    val_.assign(static_cast<std::size_t>(tree.size()),
                std::vector<double>(static_cast<std::size_t>(n_), 0.0));
    env_ = zero_env(*tree.formula(), tr);
    FreezeEnv empty;
    for (int j = 0; j < tree.size(); ++j) {
      const TreeNode& nd = tree.node(j);
      if (nd.kind == NodeKind::Atom && atom_is_predicate(*nd.formula))
        fill_atom(j, 0, empty);
    }
  }

  double run() {
    if (tree_.freeze_count() > 0) rec(1, 0);
    for (int j = tree_.size() - 1; j >= 0; --j) {
      if (tree_.inside_freeze(j)) continue;
      const TreeNode& nd = tree_.node(j);
      if (nd.kind == NodeKind::Atom || nd.kind == NodeKind::Freeze) continue;
      eval_node(j, 0);
    }
    return val_[0][0];
  }

private:
  void fill_atom(int j, int from, const FreezeEnv& env) {
    const Formula& a = *tree_.node(j).formula;
    bool upper = (a.cmp == CmpOp::GT || a.cmp == CmpOp::GE);
    auto& out = val_[static_cast<std::size_t>(j)];
    for (int p = from; p < n_; ++p) {
      double l = eval_expr(*a.lhs, tr_.sample(p), env);
      double r = eval_expr(*a.rhs, tr_.sample(p), env);
      out[static_cast<std::size_t>(p)] = upper ? l - r : r - l;
    }
  }

  void rec(int k, int t) {
    const FreezeSubtree& sub = tree_.freeze(k);
    int var_dim = frozen_dim(sub.var);
    for (int i = t; i < n_; ++i) {
      env_.set(sub.var, tr_.value(i, var_dim));
      int sub_end = tree_.node(sub.freeze_node).subtree_end;
      for (int j = sub.freeze_node + 1; j <= sub_end; ++j) {
        const TreeNode& nd = tree_.node(j);
        if (nd.freeze_level != k) continue;
        if (nd.kind == NodeKind::Atom && atom_is_constraint(*nd.formula))
          fill_atom(j, i, env_);
      }
      if (k < tree_.freeze_count()) rec(k + 1, i);
      for (int j = sub_end; j > sub.freeze_node; --j) {
        const TreeNode& nd = tree_.node(j);
        if (nd.freeze_level != k) continue;
        if (nd.kind == NodeKind::Atom || nd.kind == NodeKind::Freeze) continue;
        eval_node(j, i);
      }
      val_[static_cast<std::size_t>(sub.freeze_node)][static_cast<std::size_t>(i)] =
          val_[static_cast<std::size_t>(sub.root)][static_cast<std::size_t>(i)];
    }
  }

  void window_bounds(const TimeWindow& w, int from, std::vector<int>& lo,
                     std::vector<int>& hi) {
    lo.resize(static_cast<std::size_t>(n_));
    hi.resize(static_cast<std::size_t>(n_));
    for (int p = from; p < n_; ++p) {
      lo[static_cast<std::size_t>(p)] = tr_.first_at_or_after(tr_.time(p) + w.lo);
      hi[static_cast<std::size_t>(p)] =
          w.unbounded() ? n_ - 1 : tr_.last_at_or_before(tr_.time(p) + w.hi);
    }
  }

  void eval_node(int j, int from) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const TreeNode& nd = tree_.node(j);
    auto& out = val_[static_cast<std::size_t>(j)];
    const auto& L = val_[static_cast<std::size_t>(nd.left >= 0 ? nd.left : 0)];
    switch (nd.kind) {
      case NodeKind::Not:
        for (int p = from; p < n_; ++p)
          out[static_cast<std::size_t>(p)] = -L[static_cast<std::size_t>(p)];
        return;
      case NodeKind::And:
      case NodeKind::Or: {
        const auto& R = val_[static_cast<std::size_t>(nd.right)];
        for (int p = from; p < n_; ++p)
          out[static_cast<std::size_t>(p)] =
              nd.kind == NodeKind::And
                  ? std::min(L[static_cast<std::size_t>(p)], R[static_cast<std::size_t>(p)])
                  : std::max(L[static_cast<std::size_t>(p)], R[static_cast<std::size_t>(p)]);
        return;
      }
      case NodeKind::Always:
      case NodeKind::Eventually: {
        std::vector<int> lo, hi;
        window_bounds(nd.formula->window, from, lo, hi);
        auto res = sliding_window_extremum(L, lo, hi, nd.kind == NodeKind::Always);
        for (int p = from; p < n_; ++p)
          out[static_cast<std::size_t>(p)] = res[static_cast<std::size_t>(p)];
        return;
      }
      case NodeKind::Until:
      case NodeKind::Release: {
        const auto& R = val_[static_cast<std::size_t>(nd.right)];
        const TimeWindow& w = nd.formula->window;
        bool is_until = nd.kind == NodeKind::Until;
        if (w.lo == 0.0 && w.unbounded()) {
          // classic backward recursion
          double carry = is_until ? -kInf : kInf;
          for (int p = n_ - 1; p >= from; --p) {
            double here = R[static_cast<std::size_t>(p)];
            double lv = L[static_cast<std::size_t>(p)];
            if (is_until)
              carry = std::max(here, std::min(lv, carry));
            else
              carry = std::min(here, std::max(lv, carry));
            out[static_cast<std::size_t>(p)] = carry;
          }
          return;
        }
        // timed: direct window scan with a running prefix extremum of L
        for (int p = from; p < n_; ++p) {
          int jlo = tr_.first_at_or_after(tr_.time(p) + w.lo);
          int jhi = w.unbounded() ? n_ - 1 : tr_.last_at_or_before(tr_.time(p) + w.hi);
          double best = is_until ? -kInf : kInf;
          double runl = is_until ? kInf : -kInf;  // extremum of L over [p, q)
          for (int q = p; q <= jhi && q < n_; ++q) {
            if (q >= jlo) {
              double cand = is_until
                                ? std::min(R[static_cast<std::size_t>(q)], runl)
                                : std::max(R[static_cast<std::size_t>(q)], runl);
              best = is_until ? std::max(best, cand) : std::min(best, cand);
            }
            runl = is_until ? std::min(runl, L[static_cast<std::size_t>(q)])
                            : std::max(runl, L[static_cast<std::size_t>(q)]);
          }
          out[static_cast<std::size_t>(p)] = best;
        }
        return;
      }
      default: break;
    }
    throw std::logic_error("rho eval_node: unexpected node");
  }

  const SyntaxTree& tree_;
  const Trace& tr_;
  int n_ = 0;
  FreezeEnv env_;
  std::vector<std::vector<double>> val_;
};

inline double robustness_baseline(const SyntaxTree& tree, const Trace& tr) {
  RhoBaseline r(tree, tr);
  return r.run();
}

// ---------------------------------------------------------------------------
// Conservative robustness range.
//
// Per atom of the negation-free formula, a sound bracket of the achievable
// robustness values:
//  - separable constraints and predicates: exact extrema of the signal part
//    over the trace combined with extrema of the environment part, the
//    latter enumerated over all non-decreasing freeze instantiation tuples
//    (or interval arithmetic when exact=false),
//  - anything else: interval arithmetic over per-dimension signal ranges.
// ---------------------------------------------------------------------------

struct RobustnessRange {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

namespace detail {

inline void collect_atoms(const Formula& f, std::vector<const Formula*>& out) {
  if (is_atom(f)) {
    out.push_back(&f);
    return;
  }
  if (f.left) collect_atoms(*f.left, out);
  if (f.right) collect_atoms(*f.right, out);
}

// Extrema of an environment-only expression over all admissible (i.e. non-
// decreasing) instantiation index tuples of the freeze chain.
inline ValueRange env_extrema_exact(const Expr& e,
                                    const std::vector<FrozenKey>& chain,
                                    const Trace& tr) {
  ValueRange out{std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
  FreezeEnv env;
  std::function<void(std::size_t, int)> walk = [&](std::size_t level, int from) {
    if (level == chain.size()) {
      double v = eval_expr(e, tr.sample(0), env);
      out.lo = std::min(out.lo, v);
      out.hi = std::max(out.hi, v);
      return;
    }
    for (int i = from; i < tr.size(); ++i) {
      env.set(chain[level], tr.value(i, frozen_dim(chain[level])));
      walk(level + 1, i);
    }
  };
  walk(0, 0);
  return out;
}

}  // namespace detail

inline RobustnessRange conservative_range(const FormulaPtr& nnf_formula,
                                          const Trace& tr, bool exact = true) {
  std::vector<const Formula*> atoms;
  detail::collect_atoms(*nnf_formula, atoms);
  std::vector<FrozenKey> chain;
  collect_freeze_vars(*nnf_formula, chain);

  // per-dimension signal ranges and frozen variable ranges
  std::vector<ValueRange> dim_ranges;
  for (int k = 1; k <= tr.dim(); ++k) {
    ValueRange r{tr.value(0, k), tr.value(0, k)};
    for (int i = 1; i < tr.size(); ++i) {
      r.lo = std::min(r.lo, tr.value(i, k));
      r.hi = std::max(r.hi, tr.value(i, k));
    }
    dim_ranges.push_back(r);
  }
  std::vector<std::pair<FrozenKey, ValueRange>> env_ranges;
  {
    std::vector<FrozenKey> used;
    for (const Formula* a : atoms) {
      collect_frozen_keys(*a->lhs, used);
      collect_frozen_keys(*a->rhs, used);
    }
    for (FrozenKey k : used) {
      bool seen = false;
      for (auto& kv : env_ranges) seen = seen || kv.first == k;
      if (!seen)
        env_ranges.emplace_back(
            k, dim_ranges[static_cast<std::size_t>(frozen_dim(k) - 1)]);
    }
  }

  RobustnessRange out{std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity()};
  FreezeEnv empty;
  for (const Formula* a : atoms) {
    if (a->kind == NodeKind::Atom) {
      // rho = lhs-rhs or rhs-lhs
      bool upper = (a->cmp == CmpOp::GT || a->cmp == CmpOp::GE);
      ExprPtr g = upper ? expr_binary(ExprOp::Sub, a->lhs, a->rhs)
                        : expr_binary(ExprOp::Sub, a->rhs, a->lhs);
      ValueRange r;
      auto sep = separate_expr(g);
      if (sep && exact) {
        // exact signal extrema over the trace
        double slo = std::numeric_limits<double>::infinity(), shi = -slo;
        for (int i = 0; i < tr.size(); ++i) {
          double v = eval_expr(*sep->signal_part, tr.sample(i), empty);
          slo = std::min(slo, v);
          shi = std::max(shi, v);
        }
        ValueRange er{0.0, 0.0};
        if (expr_reads_frozen(*sep->env_part))
          er = detail::env_extrema_exact(*sep->env_part, chain, tr);
        else {
          double c = eval_expr(*sep->env_part, tr.sample(0), empty);
          er = {c, c};
        }
        r = {slo + er.lo, shi + er.hi};
      } else {
        r = expr_range(*g, dim_ranges, env_ranges);
      }
      out.lo = std::min(out.lo, r.lo);
      out.hi = std::max(out.hi, r.hi);
    }
  }
  if (out.lo > out.hi) out = {0.0, 0.0};  // no atoms
  return out;
}

// ---------------------------------------------------------------------------

enum class MonitorMode { Interval, Baseline };

struct RobustnessEstimate {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  RobustnessRange initial;
  int n_calls = 0;
  MonitorStats last_stats;
};

inline RobustnessEstimate robustness(const FormulaPtr& f, const Trace& tr,
                                     double epsilon,
                                     MonitorMode mode = MonitorMode::Interval,
                                     bool exact_range = true) {
  FormulaPtr nf = negation_normal_form(f);
  RobustnessEstimate res;
  res.initial = conservative_range(nf, tr, exact_range);
  double lo = res.initial.lo, hi = res.initial.hi;
  while (hi - lo > epsilon) {
    double r = 0.5 * (lo + hi);
    FormulaPtr probe = normalize_atoms(threshold_transform(nf, r));
    SyntaxTree tree(probe);
    MonitorResult mr = mode == MonitorMode::Interval
                           ? monitor(tree, tr, true)
                           : monitor_baseline(tree, tr, true);
    ++res.n_calls;
    res.last_stats = mr.stats;
    if (mr.satisfied) lo = r;
    else hi = r;
  }
  res.lo = lo;
  res.hi = hi;
  res.estimate = 0.5 * (lo + hi);
  return res;
}

}  // namespace stlstar

#endif  // STLSTAR_ROBUSTNESS_HPP
