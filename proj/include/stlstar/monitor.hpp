// Offline boolean monitor.
//
// Interval mode (the accelerated algorithm):
//   1. precompute runs for every signal predicate and a sorted constraint
//      index for every freeze constraint,
//   2. sweep freeze instantiations recursively, outermost variable first;
//      level k at instantiation i re-evaluates subtree(x_k) with interval
//      operations restricted to indices >= i and records whether the
//      subtree root holds at i as point(freeze node)[i],
//   3. after the sweeps, evaluate the nodes above the outermost freeze and
//      test whether the root holds at index 0.
//
// Inner sweeps restart at the outer instantiation index: for nested
// freezes, instantiations below the outer index can never influence the
// verdict, which is where the triangular instantiation count comes from.
//
// Early stoppage applies when the root is Always/Eventually and everything
// between the root and the outermost freeze is propositional: the root body
// is then decided per outer instantiation and the sweep stops at the first
// counterexample/witness inside the root window.

#ifndef STLSTAR_MONITOR_HPP
#define STLSTAR_MONITOR_HPP

#include <memory>
#include <vector>

#include "constraint_index.hpp"
#include "intervals.hpp"
#include "syntax_tree.hpp"
#include "trace.hpp"

namespace stlstar {

struct MonitorStats {
  long long instantiations = 0;   // innermost-level loop iterations
  long long outer_iterations = 0; // level-1 loop iterations
  long long subupdates = 0;
  long long constraint_rebuilds = 0;
  int max_intvl = 0;              // largest run-list size seen on any node
  bool early_stopped = false;
};

struct MonitorResult {
  bool satisfied = false;
  MonitorStats stats;
};

class IntervalMonitor {
public:
  IntervalMonitor(const SyntaxTree& tree, const Trace& tr, bool early_stop)
      : tree_(tree), tr_(tr), early_stop_(early_stop) {
    int dim_needed = formula_max_dim(*tree.formula());
    if (dim_needed > tr.dim())
      throw std::runtime_error("formula reads dimension s" +
                               std::to_string(dim_needed) +
                               " but the trace has " + std::to_string(tr.dim()));
    n_ = tr.size();
    intvl_.resize(static_cast<std::size_t>(tree.size()));
    point_.resize(static_cast<std::size_t>(tree.size()));
    for (int j = 0; j < tree.size(); ++j) {
      const TreeNode& nd = tree.node(j);
      if (nd.kind == NodeKind::Atom) {
        if (atom_is_constraint(*nd.formula)) {
          constraints_.emplace_back(j, std::make_unique<SortedConstraintIndex>(
                                           *nd.formula, tr));
        } else {
          // predicate: evaluated once, environment independent
          PointVector p;
          p.truth.resize(static_cast<std::size_t>(n_));
          FreezeEnv empty;
          for (int i = 0; i < n_; ++i)
            p.truth[static_cast<std::size_t>(i)] =
                cmp_apply(nd.formula->cmp,
                          eval_expr(*nd.formula->lhs, tr.sample(i), empty),
                          eval_expr(*nd.formula->rhs, tr.sample(i), empty));
          intvl_[static_cast<std::size_t>(j)] = transform(p, 0);
          note_size(j);
        }
      }
      if (nd.kind == NodeKind::Freeze) {
        point_[static_cast<std::size_t>(j)].truth.assign(
            static_cast<std::size_t>(n_), 0);
      }
    }
    plan_early_stop();
  }

  MonitorResult run() {
    MonitorResult res;
    decided_ = false;
    if (tree_.freeze_count() > 0) {
      rec_stlstar(1, 0);
      if (decided_) {
        collect_constraint_stats();
        res.satisfied = decided_value_;
        res.stats = stats_;
        res.stats.early_stopped = true;
        return res;
      }
    }
    // top nodes: everything outside the outermost freeze subtree
    for (int j = tree_.size() - 1; j >= 0; --j) {
      if (tree_.inside_freeze(j)) continue;  // handled per instantiation
      const TreeNode& nd = tree_.node(j);
      if (nd.kind == NodeKind::Atom) continue;
      if (nd.kind == NodeKind::Freeze) continue;  // filled by rec_stlstar
      intvl_[static_cast<std::size_t>(j)] = compute_subformula(j, 0);
      note_size(j);
    }
    res.satisfied = contains_index(intvl_[0], 0);
    collect_constraint_stats();
    res.stats = stats_;
    return res;
  }

  const IntervalList& node_intvl(int j) const {
    return intvl_[static_cast<std::size_t>(j)];
  }

private:
  void collect_constraint_stats() {
    for (auto& [j, ci] : constraints_) {
      stats_.subupdates += ci->stats().subupdates;
      stats_.constraint_rebuilds += ci->stats().rebuilds;
    }
  }

  void note_size(int j) {
    int s = static_cast<int>(intvl_[static_cast<std::size_t>(j)].size());
    if (s > stats_.max_intvl) stats_.max_intvl = s;
  }

  // Early stoppage eligibility: root Always/Eventually whose body reaches
  // the outermost freeze through And/Or/Not/atom nodes only.
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
        default: return;  // temporal node in the propositional top layer
      }
    }
    early_eligible_ = true;
  }

  // Pointwise truth of a top-subtree node at index i (predicates from their
  // precomputed runs, the freeze node from its point vector).
  bool eval_top_at(int j, int i) const {
    const TreeNode& nd = tree_.node(j);
    switch (nd.kind) {
      case NodeKind::Atom: return contains_index(intvl_[static_cast<std::size_t>(j)], i);
      case NodeKind::Freeze:
        return point_[static_cast<std::size_t>(j)].truth[static_cast<std::size_t>(i)];
      case NodeKind::Not: return !eval_top_at(nd.left, i);
      case NodeKind::And: return eval_top_at(nd.left, i) && eval_top_at(nd.right, i);
      case NodeKind::Or: return eval_top_at(nd.left, i) || eval_top_at(nd.right, i);
      default: break;
    }
    throw std::logic_error("eval_top_at: unexpected node");
  }

  // After the freeze node's point at i is known, try to decide the root.
  void early_stop_check(int i) {
    const TreeNode& root = tree_.node(0);
    double d = tr_.time(i) - tr_.time(0);
    if (d > root.formula->window.hi) {
      // window exhausted; the loop can stop, verdict is the default
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

  void rec_stlstar(int k, int t) {
    const FreezeSubtree& sub = tree_.freeze(k);
    int freeze_node = sub.freeze_node;
    int var_dim = frozen_dim(sub.var);
    for (int i = t; i < n_ && !decided_; ++i) {
      if (k == tree_.freeze_count()) ++stats_.instantiations;
      if (k == 1) ++stats_.outer_iterations;
      env_.set(sub.var, tr_.value(i, var_dim));
      // constraints of this level first
      for (auto& [j, ci] : constraints_) {
        if (tree_.node(j).freeze_level != k) continue;
        if (i == t) ci->init_instantiation(i, env_);
        else ci->update_signal_constraint(i, env_);
        intvl_[static_cast<std::size_t>(j)] = ci->intvl();
        note_size(j);
      }
      if (k < tree_.freeze_count()) rec_stlstar(k + 1, i);
      if (decided_) return;
      int sub_end = tree_.node(freeze_node).subtree_end;
      for (int j = sub_end; j > freeze_node; --j) {
        const TreeNode& nd = tree_.node(j);
        if (nd.freeze_level != k) continue;  // nested level, done already
        if (nd.kind == NodeKind::Atom) continue;
        if (nd.kind == NodeKind::Freeze) continue;  // nested level output
        intvl_[static_cast<std::size_t>(j)] = compute_subformula(j, i);
        note_size(j);
      }
      bool holds = contains_index(intvl_[static_cast<std::size_t>(sub.root)], i);
      point_[static_cast<std::size_t>(freeze_node)]
          .truth[static_cast<std::size_t>(i)] = holds;
      if (k == 1 && early_eligible_) early_stop_check(i);
    }
    if (decided_) return;
    point_[static_cast<std::size_t>(freeze_node)].valid_from = t;
    intvl_[static_cast<std::size_t>(freeze_node)] =
        transform(point_[static_cast<std::size_t>(freeze_node)], t);
    note_size(freeze_node);
  }

  IntervalList compute_subformula(int j, int i) {
    const TreeNode& nd = tree_.node(j);
    auto& L = intvl_[static_cast<std::size_t>(nd.left)];
    switch (nd.kind) {
      case NodeKind::Not: return combine_not(L, n_, i);
      case NodeKind::And:
        return combine_and(L, intvl_[static_cast<std::size_t>(nd.right)], i);
      case NodeKind::Or:
        return combine_or(L, intvl_[static_cast<std::size_t>(nd.right)], i);
      case NodeKind::Eventually:
        return eventually(L, nd.formula->window, tr_, i);
      case NodeKind::Always: return always(L, nd.formula->window, tr_, i);
      case NodeKind::Until:
        return until_op(L, intvl_[static_cast<std::size_t>(nd.right)],
                        nd.formula->window, tr_, i);
      case NodeKind::Release:
        return release_op(L, intvl_[static_cast<std::size_t>(nd.right)],
                          nd.formula->window, tr_, i);
      default: break;
    }
    throw std::logic_error("compute_subformula: unexpected node");
  }

  const SyntaxTree& tree_;
  const Trace& tr_;
  bool early_stop_;
  bool early_eligible_ = false;
  bool decided_ = false;
  bool decided_value_ = false;
  int n_ = 0;
  FreezeEnv env_;
  std::vector<IntervalList> intvl_;
  std::vector<PointVector> point_;
  std::vector<std::pair<int, std::unique_ptr<SortedConstraintIndex>>> constraints_;
  MonitorStats stats_;
};

inline MonitorResult monitor(const SyntaxTree& tree, const Trace& tr,
                             bool early_stop = false) {
  IntervalMonitor m(tree, tr, early_stop);
  return m.run();
}

}  // namespace stlstar

#endif  // STLSTAR_MONITOR_HPP
