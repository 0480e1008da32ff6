// Pointwise baseline monitor.
//
// Same instantiation sweep as the interval monitor, but every subtree node
// is evaluated as a plain truth vector over the remaining indices, with
// linear-time window recurrences for the temporal operators. No interval
// lists, no sorted constraint index; this is the reference implementation
// the acceleration is benchmarked against.

#ifndef STLSTAR_BASELINE_HPP
#define STLSTAR_BASELINE_HPP

#include <vector>

#include "monitor.hpp"
#include "syntax_tree.hpp"
#include "trace.hpp"

namespace stlstar {

class BaselineMonitor {
public:
  BaselineMonitor(const SyntaxTree& tree, const Trace& tr, bool early_stop)
      : tree_(tree), tr_(tr), early_stop_(early_stop) {
    int dim_needed = formula_max_dim(*tree.formula());
    if (dim_needed > tr.dim())
      throw std::runtime_error("formula reads dimension s" +
                               std::to_string(dim_needed) +
                               " but the trace has " + std::to_string(tr.dim()));
    n_ = tr.size();
    val_.assign(static_cast<std::size_t>(tree.size()),
                std::vector<std::uint8_t>(static_cast<std::size_t>(n_), 0));
    // predicates once
    FreezeEnv empty;
    for (int j = 0; j < tree.size(); ++j) {
      const TreeNode& nd = tree.node(j);
      if (nd.kind == NodeKind::Atom && atom_is_predicate(*nd.formula)) {
        for (int i = 0; i < n_; ++i)
          val_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
              cmp_apply(nd.formula->cmp,
                        eval_expr(*nd.formula->lhs, tr.sample(i), empty),
                        eval_expr(*nd.formula->rhs, tr.sample(i), empty));
      }
    }
    plan_early_stop();
  }

  MonitorResult run() {
    MonitorResult res;
    decided_ = false;
    if (tree_.freeze_count() > 0) {
      rec(1, 0);
      if (decided_) {
        res.satisfied = decided_value_;
        res.stats = stats_;
        res.stats.early_stopped = true;
        return res;
      }
    }
    for (int j = tree_.size() - 1; j >= 0; --j) {
      if (tree_.inside_freeze(j)) continue;
      const TreeNode& nd = tree_.node(j);
      if (nd.kind == NodeKind::Atom || nd.kind == NodeKind::Freeze) continue;
      eval_node(j, 0);
    }
    res.satisfied = val_[0][0];
    res.stats = stats_;
    return res;
  }

private:
  void plan_early_stop() {
    early_eligible_ = false;
    if (!early_stop_ || tree_.freeze_count() == 0) return;
    const TreeNode& root = tree_.node(0);
    if (root.kind != NodeKind::Always && root.kind != NodeKind::Eventually) return;
    for (int j = 1; j < tree_.size(); ++j) {
      if (tree_.inside_freeze(j)) continue;
      switch (tree_.node(j).kind) {
        case NodeKind::And:
        case NodeKind::Or:
        case NodeKind::Not:
        case NodeKind::Atom:
        case NodeKind::Freeze: break;
        default: return;
      }
    }
    early_eligible_ = true;
  }

  bool eval_top_at(int j, int i) const {
    const TreeNode& nd = tree_.node(j);
    switch (nd.kind) {
      case NodeKind::Atom:
      case NodeKind::Freeze:
        return val_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      case NodeKind::Not: return !eval_top_at(nd.left, i);
      case NodeKind::And: return eval_top_at(nd.left, i) && eval_top_at(nd.right, i);
      case NodeKind::Or: return eval_top_at(nd.left, i) || eval_top_at(nd.right, i);
      default: break;
    }
    throw std::logic_error("eval_top_at: unexpected node");
  }

  void early_stop_check(int i) {
    const TreeNode& root = tree_.node(0);
    double d = tr_.time(i) - tr_.time(0);
    if (d > root.formula->window.hi) {
      decided_ = true;
      decided_value_ = (root.kind == NodeKind::Always);
      return;
    }
    if (d < root.formula->window.lo) return;
    bool body = eval_top_at(root.left, i);
    if (root.kind == NodeKind::Eventually && body) {
      decided_ = true;
      decided_value_ = true;
    } else if (root.kind == NodeKind::Always && !body) {
      decided_ = true;
      decided_value_ = false;
    }
  }

  void rec(int k, int t) {
    const FreezeSubtree& sub = tree_.freeze(k);
    int var_dim = frozen_dim(sub.var);
    for (int i = t; i < n_ && !decided_; ++i) {
      if (k == tree_.freeze_count()) ++stats_.instantiations;
      if (k == 1) ++stats_.outer_iterations;
      env_.set(sub.var, tr_.value(i, var_dim));
      // constraints of this level under the extended environment
      int sub_end = tree_.node(sub.freeze_node).subtree_end;
      for (int j = sub.freeze_node + 1; j <= sub_end; ++j) {
        const TreeNode& nd = tree_.node(j);
        if (nd.freeze_level != k) continue;
        if (nd.kind != NodeKind::Atom || !atom_is_constraint(*nd.formula)) continue;
        auto& out = val_[static_cast<std::size_t>(j)];
        for (int p = i; p < n_; ++p)
          out[static_cast<std::size_t>(p)] =
              cmp_apply(nd.formula->cmp,
                        eval_expr(*nd.formula->lhs, tr_.sample(p), env_),
                        eval_expr(*nd.formula->rhs, tr_.sample(p), env_));
      }
      if (k < tree_.freeze_count()) rec(k + 1, i);
      if (decided_) return;
      for (int j = sub_end; j > sub.freeze_node; --j) {
        const TreeNode& nd = tree_.node(j);
        if (nd.freeze_level != k) continue;
        if (nd.kind == NodeKind::Atom || nd.kind == NodeKind::Freeze) continue;
        eval_node(j, i);
      }
      val_[static_cast<std::size_t>(sub.freeze_node)][static_cast<std::size_t>(i)] =
          val_[static_cast<std::size_t>(sub.root)][static_cast<std::size_t>(i)];
      if (k == 1 && early_eligible_) early_stop_check(i);
    }
  }

  // Truth vector of node j over [from, n-1] from its children's vectors.
  void eval_node(int j, int from) {
    const TreeNode& nd = tree_.node(j);
    auto& out = val_[static_cast<std::size_t>(j)];
    const auto& L = val_[static_cast<std::size_t>(nd.left >= 0 ? nd.left : 0)];
    switch (nd.kind) {
      case NodeKind::Not:
        for (int p = from; p < n_; ++p)
          out[static_cast<std::size_t>(p)] = !L[static_cast<std::size_t>(p)];
        return;
      case NodeKind::And:
      case NodeKind::Or: {
        const auto& R = val_[static_cast<std::size_t>(nd.right)];
        for (int p = from; p < n_; ++p)
          out[static_cast<std::size_t>(p)] =
              nd.kind == NodeKind::And
                  ? (L[static_cast<std::size_t>(p)] && R[static_cast<std::size_t>(p)])
                  : (L[static_cast<std::size_t>(p)] || R[static_cast<std::size_t>(p)]);
        return;
      }
      case NodeKind::Always:
      case NodeKind::Eventually: {
        // sliding window count of true samples in [tau_p + lo, tau_p + hi]
        const TimeWindow& w = nd.formula->window;
        int wl = from, wh = from;  // window [wl, wh)
        int count = 0;
        for (int p = from; p < n_; ++p) {
          double lo_t = tr_.time(p) + w.lo;
          double hi_t = tr_.time(p) + w.hi;
          while (wl < n_ && tr_.time(wl) < lo_t) {
            if (wl >= from && wl < wh && L[static_cast<std::size_t>(wl)]) --count;
            ++wl;
          }
          if (wh < wl) { wh = wl; count = 0; }
          while (wh < n_ && tr_.time(wh) <= hi_t) {
            if (L[static_cast<std::size_t>(wh)]) ++count;
            ++wh;
          }
          int total = wh - wl;
          bool v = nd.kind == NodeKind::Eventually ? (count > 0) : (count == total);
          out[static_cast<std::size_t>(p)] = v;
        }
        return;
      }
      case NodeKind::Until:
      case NodeKind::Release: {
        const auto& R = val_[static_cast<std::size_t>(nd.right)];
        const TimeWindow& w = nd.formula->window;
        // m[p]: first index >= p where the left side fails (Until) or
        // holds (Release); a witness/release at k < j covers exactly the
        // j <= m[p] / j > m[p] split.
        scratch_int_.assign(static_cast<std::size_t>(n_ + 1), 0);
        auto& m = scratch_int_;
        bool stop_on = (nd.kind == NodeKind::Release);
        m[static_cast<std::size_t>(n_)] = n_;
        for (int p = n_ - 1; p >= from; --p)
          m[static_cast<std::size_t>(p)] =
              (static_cast<bool>(L[static_cast<std::size_t>(p)]) != stop_on)
                  ? m[static_cast<std::size_t>(p + 1)]
                  : p;
        // prefix counts of right-side truths for O(1) window queries
        scratch_pref_.assign(static_cast<std::size_t>(n_ + 1), 0);
        auto& pref = scratch_pref_;
        for (int p = 0; p < n_; ++p)
          pref[static_cast<std::size_t>(p + 1)] =
              pref[static_cast<std::size_t>(p)] + (R[static_cast<std::size_t>(p)] ? 1 : 0);
        for (int p = from; p < n_; ++p) {
          int jlo = tr_.first_at_or_after(tr_.time(p) + w.lo);
          int jhi = w.unbounded() ? n_ - 1
                                  : tr_.last_at_or_before(tr_.time(p) + w.hi);
          if (nd.kind == NodeKind::Until) {
            // witness j in [max(jlo,p), min(jhi, m[p])] with R true
            int lo = std::max(jlo, p);
            int hi = std::min(jhi, m[static_cast<std::size_t>(p)]);
            bool v = lo <= hi &&
                     pref[static_cast<std::size_t>(hi + 1)] -
                             pref[static_cast<std::size_t>(lo)] >
                         0;
            out[static_cast<std::size_t>(p)] = v;
          } else {
            // Release: every window sample j needs R true unless some
            // k < j has L true; j > m[p] (first L-true index) is released.
            int lo = std::max(jlo, p);
            int need_hi = std::min(jhi, m[static_cast<std::size_t>(p)]);
            bool v = true;
            if (lo <= need_hi) {
              long long trues = pref[static_cast<std::size_t>(need_hi + 1)] -
                                pref[static_cast<std::size_t>(lo)];
              v = trues == (need_hi - lo + 1);
            }
            out[static_cast<std::size_t>(p)] = v;
          }
        }
        return;
      }
      default: break;
    }
    throw std::logic_error("eval_node: unexpected node");
  }

  const SyntaxTree& tree_;
  const Trace& tr_;
  bool early_stop_;
  bool early_eligible_ = false;
  bool decided_ = false;
  bool decided_value_ = false;
  int n_ = 0;
  FreezeEnv env_;
  std::vector<std::vector<std::uint8_t>> val_;
  std::vector<int> scratch_int_;
  std::vector<long long> scratch_pref_;
  MonitorStats stats_;
};

inline MonitorResult monitor_baseline(const SyntaxTree& tree, const Trace& tr,
                                      bool early_stop = false) {
  BaselineMonitor m(tree, tr, early_stop);
  return m.run();
}

}  // namespace stlstar

#endif  // STLSTAR_BASELINE_HPP
