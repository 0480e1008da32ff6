// Arithmetic expressions over signal dimensions and frozen variables.
//
// An expression reads the current sample (one double per signal dimension)
// and a freeze environment mapping frozen variables to values captured
// earlier. Frozen variables are identified by (dimension, occurrence),
// both 1-based: `s2*1` is the first frozen copy of dimension 2.

#ifndef STLSTAR_EXPR_HPP
#define STLSTAR_EXPR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stlstar {

// (dim, occ) packed into one int so environments stay flat and cheap.
using FrozenKey = std::int32_t;

constexpr FrozenKey frozen_key(int dim, int occ) {
  return static_cast<FrozenKey>(dim * 256 + occ);
}
constexpr int frozen_dim(FrozenKey k) { return k / 256; }
constexpr int frozen_occ(FrozenKey k) { return k % 256; }

// Environment binding frozen variables to captured signal values.
// Small and flat: formulas bind a handful of variables at most.
class FreezeEnv {
public:
  void set(FrozenKey key, double value) {
    for (auto& kv : bindings_) {
      if (kv.first == key) {
        kv.second = value;
        return;
      }
    }
    bindings_.emplace_back(key, value);
  }

  double get(FrozenKey key) const {
    for (const auto& kv : bindings_) {
      if (kv.first == key) return kv.second;
    }
    throw std::out_of_range("unbound frozen variable s" +
                            std::to_string(frozen_dim(key)) + "*" +
                            std::to_string(frozen_occ(key)));
  }

  bool contains(FrozenKey key) const {
    for (const auto& kv : bindings_) {
      if (kv.first == key) return true;
    }
    return false;
  }

  const std::vector<std::pair<FrozenKey, double>>& bindings() const {
    return bindings_;
  }

private:
  std::vector<std::pair<FrozenKey, double>> bindings_;
};

enum class ExprOp {
  Constant,
  SignalVar,  // current value of a signal dimension
  FrozenVar,  // value captured by a freeze operator
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Abs,
  Min,
  Max,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprOp op = ExprOp::Constant;
  double value = 0.0;      // Constant
  int dim = 0;             // SignalVar (1-based)
  FrozenKey key = 0;       // FrozenVar
  ExprPtr a, b;            // operands
};

inline ExprPtr expr_const(double v) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::Constant;
  e->value = v;
  return e;
}

inline ExprPtr expr_signal(int dim) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::SignalVar;
  e->dim = dim;
  return e;
}

inline ExprPtr expr_frozen(int dim, int occ) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::FrozenVar;
  e->key = frozen_key(dim, occ);
  return e;
}

inline ExprPtr expr_binary(ExprOp op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

inline ExprPtr expr_unary(ExprOp op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->a = std::move(a);
  return e;
}

// sample points at dim consecutive doubles (dimension k at sample[k-1]).
inline double eval_expr(const Expr& e, const double* sample,
                        const FreezeEnv& env) {
  switch (e.op) {
    case ExprOp::Constant:  return e.value;
    case ExprOp::SignalVar: return sample[e.dim - 1];
    case ExprOp::FrozenVar: return env.get(e.key);
    case ExprOp::Add: return eval_expr(*e.a, sample, env) + eval_expr(*e.b, sample, env);
    case ExprOp::Sub: return eval_expr(*e.a, sample, env) - eval_expr(*e.b, sample, env);
    case ExprOp::Mul: return eval_expr(*e.a, sample, env) * eval_expr(*e.b, sample, env);
    case ExprOp::Div: return eval_expr(*e.a, sample, env) / eval_expr(*e.b, sample, env);
    case ExprOp::Neg: return -eval_expr(*e.a, sample, env);
    case ExprOp::Abs: return std::fabs(eval_expr(*e.a, sample, env));
    case ExprOp::Min: return std::min(eval_expr(*e.a, sample, env), eval_expr(*e.b, sample, env));
    case ExprOp::Max: return std::max(eval_expr(*e.a, sample, env), eval_expr(*e.b, sample, env));
  }
  throw std::logic_error("eval_expr: bad op");
}

inline bool expr_reads_signal(const Expr& e) {
  if (e.op == ExprOp::SignalVar) return true;
  if (e.a && expr_reads_signal(*e.a)) return true;
  if (e.b && expr_reads_signal(*e.b)) return true;
  return false;
}

inline bool expr_reads_frozen(const Expr& e) {
  if (e.op == ExprOp::FrozenVar) return true;
  if (e.a && expr_reads_frozen(*e.a)) return true;
  if (e.b && expr_reads_frozen(*e.b)) return true;
  return false;
}

inline void collect_frozen_keys(const Expr& e, std::vector<FrozenKey>& out) {
  if (e.op == ExprOp::FrozenVar) {
    if (std::find(out.begin(), out.end(), e.key) == out.end()) out.push_back(e.key);
  }
  if (e.a) collect_frozen_keys(*e.a, out);
  if (e.b) collect_frozen_keys(*e.b, out);
}

inline int expr_max_dim(const Expr& e) {
  int d = 0;
  if (e.op == ExprOp::SignalVar) d = e.dim;
  if (e.op == ExprOp::FrozenVar) d = frozen_dim(e.key);
  if (e.a) d = std::max(d, expr_max_dim(*e.a));
  if (e.b) d = std::max(d, expr_max_dim(*e.b));
  return d;
}

// Additive separation: expr == signal_part + env_part with the signal part
// free of frozen variables and the env part free of signal variables.
// Returns nothing when the expression mixes the two non-additively.
struct SeparatedExpr {
  ExprPtr signal_part;  // may be a constant 0
  ExprPtr env_part;     // may be a constant 0
};

inline std::optional<SeparatedExpr> separate_expr(const ExprPtr& e) {
  if (!expr_reads_frozen(*e)) return SeparatedExpr{e, expr_const(0.0)};
  if (!expr_reads_signal(*e)) return SeparatedExpr{expr_const(0.0), e};
  switch (e->op) {
    case ExprOp::Add:
    case ExprOp::Sub: {
      auto sa = separate_expr(e->a);
      auto sb = separate_expr(e->b);
      if (!sa || !sb) return std::nullopt;
      return SeparatedExpr{
          expr_binary(e->op, sa->signal_part, sb->signal_part),
          expr_binary(e->op, sa->env_part, sb->env_part)};
    }
    case ExprOp::Neg: {
      auto sa = separate_expr(e->a);
      if (!sa) return std::nullopt;
      return SeparatedExpr{expr_unary(ExprOp::Neg, sa->signal_part),
                           expr_unary(ExprOp::Neg, sa->env_part)};
    }
    default:
      return std::nullopt;
  }
}

// Interval-arithmetic range of an expression given per-dimension signal
// ranges and per-variable environment ranges. Sound over-approximation.
struct ValueRange {
  double lo = 0.0;
  double hi = 0.0;
};

inline ValueRange expr_range(const Expr& e,
                             const std::vector<ValueRange>& dim_ranges,
                             const std::vector<std::pair<FrozenKey, ValueRange>>& env_ranges) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto rng = [&](const Expr& sub) { return expr_range(sub, dim_ranges, env_ranges); };
  switch (e.op) {
    case ExprOp::Constant:  return {e.value, e.value};
    case ExprOp::SignalVar: return dim_ranges.at(static_cast<std::size_t>(e.dim - 1));
    case ExprOp::FrozenVar: {
      for (const auto& kv : env_ranges)
        if (kv.first == e.key) return kv.second;
      throw std::out_of_range("expr_range: unbound frozen variable");
    }
    case ExprOp::Add: {
      auto x = rng(*e.a), y = rng(*e.b);
      return {x.lo + y.lo, x.hi + y.hi};
    }
    case ExprOp::Sub: {
      auto x = rng(*e.a), y = rng(*e.b);
      return {x.lo - y.hi, x.hi - y.lo};
    }
    case ExprOp::Mul: {
      auto x = rng(*e.a), y = rng(*e.b);
      double p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
      return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
    case ExprOp::Div: {
      auto x = rng(*e.a), y = rng(*e.b);
      if (y.lo <= 0.0 && y.hi >= 0.0) return {-kInf, kInf};
      double p[4] = {x.lo / y.lo, x.lo / y.hi, x.hi / y.lo, x.hi / y.hi};
      return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
    case ExprOp::Neg: {
      auto x = rng(*e.a);
      return {-x.hi, -x.lo};
    }
    case ExprOp::Abs: {
      auto x = rng(*e.a);
      if (x.lo >= 0.0) return x;
      if (x.hi <= 0.0) return {-x.hi, -x.lo};
      return {0.0, std::max(-x.lo, x.hi)};
    }
    case ExprOp::Min: {
      auto x = rng(*e.a), y = rng(*e.b);
      return {std::min(x.lo, y.lo), std::min(x.hi, y.hi)};
    }
    case ExprOp::Max: {
      auto x = rng(*e.a), y = rng(*e.b);
      return {std::max(x.lo, y.lo), std::max(x.hi, y.hi)};
    }
  }
  throw std::logic_error("expr_range: bad op");
}

inline std::string expr_to_string(const Expr& e) {
  auto bin = [&](const char* sym) {
    return "(" + expr_to_string(*e.a) + " " + sym + " " + expr_to_string(*e.b) + ")";
  };
  switch (e.op) {
    case ExprOp::Constant: {
      std::string s = std::to_string(e.value);
      s.erase(s.find_last_not_of('0') + 1);
      if (!s.empty() && s.back() == '.') s.pop_back();
      return s;
    }
    case ExprOp::SignalVar: return "s" + std::to_string(e.dim);
    case ExprOp::FrozenVar:
      return "s" + std::to_string(frozen_dim(e.key)) + "*" +
             std::to_string(frozen_occ(e.key));
    case ExprOp::Add: return bin("+");
    case ExprOp::Sub: return bin("-");
    case ExprOp::Mul: return bin("*");
    case ExprOp::Div: return bin("/");
    case ExprOp::Neg: return "(-" + expr_to_string(*e.a) + ")";
    case ExprOp::Abs: return "abs(" + expr_to_string(*e.a) + ")";
    case ExprOp::Min: return "min(" + expr_to_string(*e.a) + ", " + expr_to_string(*e.b) + ")";
    case ExprOp::Max: return "max(" + expr_to_string(*e.a) + ", " + expr_to_string(*e.b) + ")";
  }
  return "?";
}

inline bool expr_equal(const Expr& x, const Expr& y) {
  if (x.op != y.op) return false;
  switch (x.op) {
    case ExprOp::Constant:  return x.value == y.value;
    case ExprOp::SignalVar: return x.dim == y.dim;
    case ExprOp::FrozenVar: return x.key == y.key;
    default: break;
  }
  if (static_cast<bool>(x.a) != static_cast<bool>(y.a)) return false;
  if (static_cast<bool>(x.b) != static_cast<bool>(y.b)) return false;
  if (x.a && !expr_equal(*x.a, *y.a)) return false;
  if (x.b && !expr_equal(*x.b, *y.b)) return false;
  return true;
}

}  // namespace stlstar

#endif  // STLSTAR_EXPR_HPP
