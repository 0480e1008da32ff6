// Incremental evaluation of freeze constraints.
//
// A separable constraint f1(signal) ~ f2(env) keeps the f1 values of all
// samples in sorted order (stable on the original index for ties). For a
// fixed environment its truth over the sorted order is one-sided around a
// single flip position, so moving to the next environment only flips the
// sorted positions between the old and the new flip whose original index is
// still relevant (>= the current instantiation index). Flipping a point
// patches the run structure locally through the start/finish endpoint
// arrays; removals are lazy (tombstones) and resolved when the arrays are
// re-sorted.
//
// After the flips, either the endpoint arrays are sorted directly (when
// size*log2(size) < |trace|) or the run list is rebuilt by scanning the
// truth vector from the instantiation index.
//
// Constraints that cannot be separated additively fall back to a plain
// rescan of the suffix on every update; identical results, no acceleration.

#ifndef STLSTAR_CONSTRAINT_INDEX_HPP
#define STLSTAR_CONSTRAINT_INDEX_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "expr.hpp"
#include "formula.hpp"
#include "intervals.hpp"
#include "trace.hpp"

namespace stlstar {

struct ConstraintStats {
  long long subupdates = 0;
  long long endpoint_sorts = 0;
  long long rebuilds = 0;
};

class SortedConstraintIndex {
public:
  SortedConstraintIndex(const Formula& atom, const Trace& tr)
      : atom_(&atom), tr_(&tr) {
    n_ = tr.size();
    // canonical form: f1(signal) cmp f2(env) with f1 = lhs-rhs signal part
    auto diff = expr_binary(ExprOp::Sub, atom.lhs, atom.rhs);
    auto sep = separate_expr(diff);
    separable_ = sep.has_value();
    cmp_ = atom.cmp;
    if (separable_) {
      f1_ = sep->signal_part;
      f2_ = expr_unary(ExprOp::Neg, sep->env_part);
      build_sorted();
    }
    point_.truth.assign(static_cast<std::size_t>(n_), 0);
    point_.valid_from = 0;
  }

  bool separable() const { return separable_; }
  const PointVector& point() const { return point_; }
  const IntervalList& intvl() const { return intvl_; }
  int flip() const { return flip_; }
  const std::vector<double>& sorted_values() const { return sorted_values_; }
  ConstraintStats& stats() { return stats_; }

  // Fresh evaluation under env with instantiation index i. Used at the
  // first iteration of every monitor sweep; O(n).
  void init_instantiation(int i, const FreezeEnv& env) {
    if (separable_) {
      double t = eval_expr(*f2_, tr_->sample(i), env);
      threshold_ = t;
      flip_ = compute_flip(t);
      for (int l = 0; l < n_; ++l)
        point_.truth[static_cast<std::size_t>(l)] = sorted_truth_at_orig(l);
    } else {
      FreezeEnv e = env;
      for (int l = 0; l < n_; ++l)
        point_.truth[static_cast<std::size_t>(l)] =
            cmp_apply(cmp_, eval_expr(*atom_->lhs, tr_->sample(l), e),
                      eval_expr(*atom_->rhs, tr_->sample(l), e));
    }
    point_.valid_from = i;
    rebuild_runs(i);
    last_i_ = i;
  }

  // Incremental move to instantiation i (== last instantiation + 1 within
  // the same sweep). Only touches original indices >= i.
  void update_signal_constraint(int i, const FreezeEnv& env) {
    if (!separable_ || i != last_i_ + 1) {
      init_instantiation(i, env);
      return;
    }
    double t = eval_expr(*f2_, tr_->sample(i), env);
    int new_flip = compute_flip(t);
    int lo = std::min(flip_, new_flip);
    int hi = std::max(flip_, new_flip);
    int changed = 0;
    for (int pos = lo; pos < hi; ++pos) {
      int orig = sorted_orig_[static_cast<std::size_t>(pos)];
      if (orig < i) continue;
      subupdate(orig);
      ++changed;
    }
    threshold_ = t;
    flip_ = new_flip;
    point_.valid_from = i;
    last_i_ = i;

    if (changed == 0) {
      // run structure unchanged; just re-clip
      intvl_ = clip_from(full_runs_, i);
      return;
    }
    double sz = static_cast<double>(starts_.size() + finishes_.size());
    if (sz > 0.0 && sz * std::log2(sz) < static_cast<double>(n_)) {
      ++stats_.endpoint_sorts;
      compact_endpoints();
      full_runs_.clear();
      for (std::size_t k = 0; k < starts_.size(); ++k)
        full_runs_.push_back({starts_[k], finishes_[k]});
      intvl_ = clip_from(full_runs_, i);
    } else {
      ++stats_.rebuilds;
      rebuild_runs(i);
    }
  }

private:
  void build_sorted() {
    FreezeEnv empty;
    std::vector<int> order(static_cast<std::size_t>(n_));
    sorted_values_.resize(static_cast<std::size_t>(n_));
    f1_values_.resize(static_cast<std::size_t>(n_));
    for (int l = 0; l < n_; ++l) {
      f1_values_[static_cast<std::size_t>(l)] =
          eval_expr(*f1_, tr_->sample(l), empty);
      order[static_cast<std::size_t>(l)] = l;
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return f1_values_[static_cast<std::size_t>(a)] <
             f1_values_[static_cast<std::size_t>(b)];
    });
    sorted_orig_ = order;
    pos_of_orig_.assign(static_cast<std::size_t>(n_), 0);
    for (int pos = 0; pos < n_; ++pos) {
      sorted_values_[static_cast<std::size_t>(pos)] =
          f1_values_[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])];
      pos_of_orig_[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;
    }
    prefix_true_ = (cmp_ == CmpOp::LT || cmp_ == CmpOp::LE);
  }

  bool value_truth(double v, double t) const { return cmp_apply(cmp_, v, t); }

  // First sorted position whose truth differs from position 0's region.
  int compute_flip(double t) const {
    auto begin = sorted_values_.begin(), end = sorted_values_.end();
    if (prefix_true_) {
      // true region is a prefix: count of values satisfying v cmp t
      auto it = std::partition_point(begin, end,
                                     [&](double v) { return value_truth(v, t); });
      return static_cast<int>(it - begin);
    }
    // true region is a suffix: flip = first true position
    auto it = std::partition_point(begin, end,
                                   [&](double v) { return !value_truth(v, t); });
    return static_cast<int>(it - begin);
  }

  bool sorted_truth_at_orig(int orig) const {
    int pos = pos_of_orig_[static_cast<std::size_t>(orig)];
    bool in_prefix = pos < flip_;
    return prefix_true_ ? in_prefix : !in_prefix;
  }

  // Flips point[l] and patches the run endpoints using neighbor truth.
  void subupdate(int l) {
    ++stats_.subupdates;
    auto truth = [&](int k) -> bool {
      if (k < 0 || k >= n_) return false;
      return point_.truth[static_cast<std::size_t>(k)];
    };
    bool was_true = truth(l);
    point_.truth[static_cast<std::size_t>(l)] ^= 1;
    if (was_true) {
      // a run loses l
      if (truth(l + 1)) add_start(l + 1);
      else remove_finish(l);
      if (truth(l - 1)) add_finish(l - 1);
      else remove_start(l);
    } else {
      // a run gains l
      if (truth(l + 1)) remove_start(l + 1);
      else add_finish(l);
      if (truth(l - 1)) remove_finish(l - 1);
      else add_start(l);
    }
  }

  void add_start(int v) { starts_raw_.push_back(v); }
  void add_finish(int v) { finishes_raw_.push_back(v); }
  void remove_start(int v) { start_tombs_.push_back(v); }
  void remove_finish(int v) { finish_tombs_.push_back(v); }

  static std::vector<int> settle(std::vector<int>& raw, std::vector<int>& tombs) {
    std::sort(raw.begin(), raw.end());
    std::sort(tombs.begin(), tombs.end());
    std::vector<int> out;
    out.reserve(raw.size());
    std::size_t t = 0;
    for (int v : raw) {
      if (t < tombs.size() && tombs[t] == v) {
        ++t;  // lazily removed
        continue;
      }
      out.push_back(v);
    }
    tombs.clear();
    return out;
  }

  void compact_endpoints() {
    starts_ = settle(starts_raw_, start_tombs_);
    finishes_ = settle(finishes_raw_, finish_tombs_);
    starts_raw_ = starts_;
    finishes_raw_ = finishes_;
  }

  void rebuild_runs(int i) {
    full_runs_ = transform(point_, 0);
    intvl_ = clip_from(full_runs_, i);
    starts_.clear();
    finishes_.clear();
    for (const auto& iv : full_runs_) {
      starts_.push_back(iv.lo);
      finishes_.push_back(iv.hi);
    }
    starts_raw_ = starts_;
    finishes_raw_ = finishes_;
    start_tombs_.clear();
    finish_tombs_.clear();
  }

  const Formula* atom_;
  const Trace* tr_;
  int n_ = 0;
  bool separable_ = false;
  bool prefix_true_ = true;
  CmpOp cmp_ = CmpOp::LE;
  ExprPtr f1_, f2_;

  std::vector<double> f1_values_;     // by original index
  std::vector<double> sorted_values_; // by sorted position
  std::vector<int> sorted_orig_;      // sorted position -> original index
  std::vector<int> pos_of_orig_;      // original index -> sorted position

  double threshold_ = 0.0;
  int flip_ = 0;
  int last_i_ = -2;

  PointVector point_;
  IntervalList intvl_;       // clipped to >= current instantiation
  IntervalList full_runs_;   // runs of the stored truth vector
  std::vector<int> starts_, finishes_;          // settled endpoints
  std::vector<int> starts_raw_, finishes_raw_;  // with pending additions
  std::vector<int> start_tombs_, finish_tombs_;
  ConstraintStats stats_;
};

}  // namespace stlstar

#endif  // STLSTAR_CONSTRAINT_INDEX_HPP
