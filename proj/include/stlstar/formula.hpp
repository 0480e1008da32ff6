// Formula AST for STL with value freezing.
//
// Node kinds: atomic comparisons, boolean connectives, timed temporal
// operators, and Freeze, which captures the current value of one signal
// dimension into a frozen variable for the subformula underneath.
//
// Release is internal only: it is never produced by the parser and exists
// so that negation normal form stays exact for until with a left window
// bound above zero (the classic rewrite is only sound for lower bound 0).

#ifndef STLSTAR_FORMULA_HPP
#define STLSTAR_FORMULA_HPP

#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "expr.hpp"

namespace stlstar {

enum class NodeKind {
  Atom,
  Not,
  And,
  Or,
  Always,
  Eventually,
  Until,
  Release,  // internal NNF dual of Until
  Freeze,
};

enum class CmpOp { LT, LE, GT, GE };

inline CmpOp flip_cmp(CmpOp op) {
  // Negation: !(a < b) == a >= b, etc.
  switch (op) {
    case CmpOp::LT: return CmpOp::GE;
    case CmpOp::LE: return CmpOp::GT;
    case CmpOp::GT: return CmpOp::LE;
    case CmpOp::GE: return CmpOp::LT;
  }
  throw std::logic_error("flip_cmp");
}

inline bool cmp_apply(CmpOp op, double l, double r) {
  switch (op) {
    case CmpOp::LT: return l < r;
    case CmpOp::LE: return l <= r;
    case CmpOp::GT: return l > r;
    case CmpOp::GE: return l >= r;
  }
  return false;
}

inline const char* cmp_name(CmpOp op) {
  switch (op) {
    case CmpOp::LT: return "<";
    case CmpOp::LE: return "<=";
    case CmpOp::GT: return ">";
    case CmpOp::GE: return ">=";
  }
  return "?";
}

// Closed time window [lo, hi]; hi may be +inf (untimed operators).
struct TimeWindow {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool unbounded() const { return hi == std::numeric_limits<double>::infinity(); }
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  NodeKind kind = NodeKind::Atom;
  // Atom
  ExprPtr lhs, rhs;
  CmpOp cmp = CmpOp::LE;
  // Temporal
  TimeWindow window;
  // Freeze
  FrozenKey var = 0;
  // Children: left for unary, left+right for binary.
  FormulaPtr left, right;
};

inline FormulaPtr make_atom(ExprPtr lhs, CmpOp cmp, ExprPtr rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Atom;
  f->lhs = std::move(lhs);
  f->cmp = cmp;
  f->rhs = std::move(rhs);
  return f;
}

inline FormulaPtr make_not(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Not;
  f->left = std::move(a);
  return f;
}

inline FormulaPtr make_binary(NodeKind kind, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

inline FormulaPtr make_and(FormulaPtr a, FormulaPtr b) {
  return make_binary(NodeKind::And, std::move(a), std::move(b));
}
inline FormulaPtr make_or(FormulaPtr a, FormulaPtr b) {
  return make_binary(NodeKind::Or, std::move(a), std::move(b));
}

inline FormulaPtr make_temporal(NodeKind kind, TimeWindow w, FormulaPtr a,
                                FormulaPtr b = nullptr) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->window = w;
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

inline FormulaPtr make_freeze(int dim, int occ, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Freeze;
  f->var = frozen_key(dim, occ);
  f->left = std::move(body);
  return f;
}

inline bool is_atom(const Formula& f) { return f.kind == NodeKind::Atom; }

// A predicate reads only the current sample; a constraint also reads
// frozen variables.
inline bool atom_is_constraint(const Formula& f) {
  return is_atom(f) && (expr_reads_frozen(*f.lhs) || expr_reads_frozen(*f.rhs));
}
inline bool atom_is_predicate(const Formula& f) {
  return is_atom(f) && !atom_is_constraint(f);
}

inline void collect_freeze_vars(const Formula& f, std::vector<FrozenKey>& out) {
  if (f.kind == NodeKind::Freeze) {
    if (std::find(out.begin(), out.end(), f.var) == out.end()) out.push_back(f.var);
  }
  if (f.left) collect_freeze_vars(*f.left, out);
  if (f.right) collect_freeze_vars(*f.right, out);
}

inline int formula_max_dim(const Formula& f) {
  int d = 0;
  if (is_atom(f)) d = std::max(expr_max_dim(*f.lhs), expr_max_dim(*f.rhs));
  if (f.kind == NodeKind::Freeze) d = std::max(d, frozen_dim(f.var));
  if (f.left) d = std::max(d, formula_max_dim(*f.left));
  if (f.right) d = std::max(d, formula_max_dim(*f.right));
  return d;
}

// Checks that every frozen variable an atom reads is bound by an enclosing
// Freeze, and that no freeze rebinds a name already in scope.
inline void check_bindings(const Formula& f, std::vector<FrozenKey>& scope) {
  if (is_atom(f)) {
    std::vector<FrozenKey> used;
    collect_frozen_keys(*f.lhs, used);
    collect_frozen_keys(*f.rhs, used);
    for (FrozenKey k : used) {
      if (std::find(scope.begin(), scope.end(), k) == scope.end())
        throw std::runtime_error("unbound frozen variable s" +
                                 std::to_string(frozen_dim(k)) + "*" +
                                 std::to_string(frozen_occ(k)));
    }
    return;
  }
  if (f.kind == NodeKind::Freeze) {
    if (std::find(scope.begin(), scope.end(), f.var) != scope.end())
      throw std::runtime_error("frozen variable s" +
                               std::to_string(frozen_dim(f.var)) + "*" +
                               std::to_string(frozen_occ(f.var)) +
                               " bound twice in the same scope");
    scope.push_back(f.var);
    check_bindings(*f.left, scope);
    scope.pop_back();
    return;
  }
  if (f.left) check_bindings(*f.left, scope);
  if (f.right) check_bindings(*f.right, scope);
}

inline void check_bindings(const Formula& f) {
  std::vector<FrozenKey> scope;
  check_bindings(f, scope);
}

// ---------------------------------------------------------------------------
// Negation normal form.
//
// Negations are pushed to the leaves and absorbed by reversing comparisons,
// so the result contains no Not node. not(a U_I b) with I.lo == 0 uses
//   G_I not b || (not b U_I (not a && not b))
// which is exact in pointwise semantics for lower bound 0; for I.lo > 0 the
// rewrite above is unsound and Release (the exact dual) is emitted instead.
// ---------------------------------------------------------------------------

inline FormulaPtr negation_normal_form(const FormulaPtr& f, bool negated = false) {
  switch (f->kind) {
    case NodeKind::Atom:
      if (!negated) return f;
      return make_atom(f->lhs, flip_cmp(f->cmp), f->rhs);
    case NodeKind::Not:
      return negation_normal_form(f->left, !negated);
    case NodeKind::And:
    case NodeKind::Or: {
      NodeKind k = f->kind;
      if (negated) k = (k == NodeKind::And) ? NodeKind::Or : NodeKind::And;
      return make_binary(k, negation_normal_form(f->left, negated),
                         negation_normal_form(f->right, negated));
    }
    case NodeKind::Always:
    case NodeKind::Eventually: {
      NodeKind k = f->kind;
      if (negated)
        k = (k == NodeKind::Always) ? NodeKind::Eventually : NodeKind::Always;
      return make_temporal(k, f->window, negation_normal_form(f->left, negated));
    }
    case NodeKind::Until: {
      if (!negated)
        return make_temporal(NodeKind::Until, f->window,
                             negation_normal_form(f->left, false),
                             negation_normal_form(f->right, false));
      return make_temporal(NodeKind::Release, f->window,
                           negation_normal_form(f->left, true),
                           negation_normal_form(f->right, true));
    }
    case NodeKind::Release: {
      if (!negated)
        return make_temporal(NodeKind::Release, f->window,
                             negation_normal_form(f->left, false),
                             negation_normal_form(f->right, false));
      return make_temporal(NodeKind::Until, f->window,
                           negation_normal_form(f->left, true),
                           negation_normal_form(f->right, true));
    }
    case NodeKind::Freeze: {
      // Freeze commutes with negation: it only extends the environment.
      auto g = std::make_shared<Formula>();
      g->kind = NodeKind::Freeze;
      g->var = f->var;
      g->left = negation_normal_form(f->left, negated);
      return g;
    }
  }
  throw std::logic_error("negation_normal_form: bad kind");
}

// ---------------------------------------------------------------------------
// Threshold transform: shifts every atom of a negation-free formula by r so
// that a true verdict certifies robustness >= r and a false verdict <= r.
//   lhs {>,>=} rhs  ->  lhs {>,>=} rhs + r
//   lhs {<,<=} rhs  ->  lhs {<,<=} rhs - r
// ---------------------------------------------------------------------------

inline FormulaPtr threshold_transform(const FormulaPtr& f, double r) {
  switch (f->kind) {
    case NodeKind::Atom: {
      double shift = (f->cmp == CmpOp::GT || f->cmp == CmpOp::GE) ? r : -r;
      return make_atom(f->lhs, f->cmp,
                       expr_binary(ExprOp::Add, f->rhs, expr_const(shift)));
    }
    case NodeKind::Not:
      throw std::runtime_error(
          "threshold_transform requires a negation-free formula");
    case NodeKind::Freeze: {
      auto g = std::make_shared<Formula>();
      g->kind = NodeKind::Freeze;
      g->var = f->var;
      g->left = threshold_transform(f->left, r);
      return g;
    }
    default: {
      auto h = std::make_shared<Formula>();
      *h = *f;
      h->left = f->left ? threshold_transform(f->left, r) : nullptr;
      h->right = f->right ? threshold_transform(f->right, r) : nullptr;
      return h;
    }
  }
}

// ---------------------------------------------------------------------------
// Atom normalization for the sorted-index acceleration.
//
// Rewrites constraints whose separation is blocked by a top-level abs:
//   |A| <= B  ->  A <= B && -A <= B        (same for <)
//   |A| >= B  ->  A >= B || -A >= B        (same for >)
// applied only when the atom mixes signal and frozen reads and cannot be
// separated additively as is. Logically and robustness-wise equivalent.
// ---------------------------------------------------------------------------

inline bool atom_separable(const Formula& f) {
  auto g = expr_binary(ExprOp::Sub, f.lhs, f.rhs);
  return separate_expr(g).has_value();
}

inline FormulaPtr normalize_atoms(const FormulaPtr& f) {
  if (f->kind == NodeKind::Atom) {
    if (!atom_is_constraint(*f) || atom_separable(*f)) return f;
    // Orient so a lone abs sits on the left.
    ExprPtr lhs = f->lhs, rhs = f->rhs;
    CmpOp cmp = f->cmp;
    if (rhs->op == ExprOp::Abs && lhs->op != ExprOp::Abs) {
      std::swap(lhs, rhs);
      cmp = (cmp == CmpOp::LT)   ? CmpOp::GT
            : (cmp == CmpOp::LE) ? CmpOp::GE
            : (cmp == CmpOp::GT) ? CmpOp::LT
                                 : CmpOp::LE;
    }
    if (lhs->op != ExprOp::Abs) return f;  // not an abs pattern; fallback path handles it
    ExprPtr inner = lhs->a;
    ExprPtr ninner = expr_unary(ExprOp::Neg, inner);
    FormulaPtr pos = normalize_atoms(make_atom(inner, cmp, rhs));
    FormulaPtr neg = normalize_atoms(make_atom(ninner, cmp, rhs));
    if (cmp == CmpOp::LT || cmp == CmpOp::LE) return make_and(pos, neg);
    return make_or(pos, neg);
  }
  auto h = std::make_shared<Formula>();
  *h = *f;
  h->left = f->left ? normalize_atoms(f->left) : nullptr;
  h->right = f->right ? normalize_atoms(f->right) : nullptr;
  return h;
}

// ---------------------------------------------------------------------------

inline std::string window_to_string(const TimeWindow& w) {
  if (w.lo == 0.0 && w.unbounded()) return "";
  std::string lo = std::to_string(w.lo), hi = w.unbounded() ? "inf" : std::to_string(w.hi);
  auto chop = [](std::string& s) {
    if (s.find('.') == std::string::npos) return;
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
  };
  chop(lo);
  chop(hi);
  return "[" + lo + "," + hi + "]";
}

inline std::string formula_to_string(const Formula& f) {
  switch (f.kind) {
    case NodeKind::Atom:
      return expr_to_string(*f.lhs) + " " + cmp_name(f.cmp) + " " +
             expr_to_string(*f.rhs);
    case NodeKind::Not: return "!(" + formula_to_string(*f.left) + ")";
    case NodeKind::And:
      return "(" + formula_to_string(*f.left) + " && " +
             formula_to_string(*f.right) + ")";
    case NodeKind::Or:
      return "(" + formula_to_string(*f.left) + " || " +
             formula_to_string(*f.right) + ")";
    case NodeKind::Always:
      return "G" + window_to_string(f.window) + " (" +
             formula_to_string(*f.left) + ")";
    case NodeKind::Eventually:
      return "F" + window_to_string(f.window) + " (" +
             formula_to_string(*f.left) + ")";
    case NodeKind::Until:
      return "((" + formula_to_string(*f.left) + ") U" +
             window_to_string(f.window) + " (" + formula_to_string(*f.right) +
             "))";
    case NodeKind::Release:
      return "((" + formula_to_string(*f.left) + ") R" +
             window_to_string(f.window) + " (" + formula_to_string(*f.right) +
             "))";
    case NodeKind::Freeze:
      return "freeze(s" + std::to_string(frozen_dim(f.var)) + "*" +
             std::to_string(frozen_occ(f.var)) + "). (" +
             formula_to_string(*f.left) + ")";
  }
  return "?";
}

inline bool formula_equal(const Formula& x, const Formula& y) {
  if (x.kind != y.kind) return false;
  if (x.kind == NodeKind::Atom)
    return x.cmp == y.cmp && expr_equal(*x.lhs, *y.lhs) && expr_equal(*x.rhs, *y.rhs);
  if (x.kind == NodeKind::Freeze && x.var != y.var) return false;
  if (x.window.lo != y.window.lo || x.window.hi != y.window.hi) {
    switch (x.kind) {
      case NodeKind::Always:
      case NodeKind::Eventually:
      case NodeKind::Until:
      case NodeKind::Release: return false;
      default: break;
    }
  }
  if (static_cast<bool>(x.left) != static_cast<bool>(y.left)) return false;
  if (static_cast<bool>(x.right) != static_cast<bool>(y.right)) return false;
  if (x.left && !formula_equal(*x.left, *y.left)) return false;
  if (x.right && !formula_equal(*x.right, *y.right)) return false;
  return true;
}

}  // namespace stlstar

#endif  // STLSTAR_FORMULA_HPP
