#include <doctest.h>

#include "helpers.hpp"
#include "stlstar/oracle.hpp"
#include "stlstar/parser.hpp"

using namespace stlstar;

TEST_CASE("parser handles precedence and round trips") {
  auto f = parse_formula("s1 > 2 && s1 < 5 || s2 >= 0");
  CHECK(f->kind == NodeKind::Or);
  CHECK(f->left->kind == NodeKind::And);

  auto g = parse_formula("G[0,10] ( s > 1 -> F[1,3] ( s < 0 ) )");
  CHECK(g->kind == NodeKind::Always);
  CHECK(g->left->kind == NodeKind::Or);

  auto h = parse_formula(formula_to_string(*g));
  CHECK(formula_equal(*g, *h));
}

TEST_CASE("parser: freeze syntax, in-ranges, bare s") {
  auto f = parse_formula("freeze(s*1). ( abs(s*1 - s) <= 0.1 )");
  CHECK(f->kind == NodeKind::Freeze);
  auto g = parse_formula("s in [1, 2]");
  CHECK(g->kind == NodeKind::And);
  CHECK(g->left->cmp == CmpOp::GE);
  CHECK(g->right->cmp == CmpOp::LE);
}

TEST_CASE("parser rejects malformed input and unbound variables") {
  CHECK_THROWS_AS(parse_formula("s >"), ParseError);
  CHECK_THROWS_AS(parse_formula("G[3,1] ( s > 0 )"), ParseError);
  CHECK_THROWS(parse_formula("s*1 > 2"));  // never frozen
  CHECK_THROWS(parse_formula("freeze(s*1). ( freeze(s*1). ( s*1 > 0 ) )"));
}

TEST_CASE("untimed operators mean [0,inf)") {
  auto f = parse_formula("F ( s > 1 )");
  CHECK(f->window.lo == 0.0);
  CHECK(f->window.unbounded());
}

TEST_CASE("negation normal form is negation-free and oracle-equivalent") {
  std::mt19937 rng(2024);
  for (int it = 0; it < 150; ++it) {
    auto f = testgen::random_formula(rng, 2, 4, it % 3);
    auto nf = negation_normal_form(f);
    std::function<bool(const Formula&)> no_not = [&](const Formula& g) {
      if (g.kind == NodeKind::Not) return false;
      if (g.left && !no_not(*g.left)) return false;
      if (g.right && !no_not(*g.right)) return false;
      return true;
    };
    CHECK(no_not(*nf));
    auto tr = testgen::random_trace(rng, 12, 2, it % 2 == 0);
    FreezeEnv env = zero_env(*f, tr);
    for (int i = 0; i < tr.size(); ++i) {
      CAPTURE(formula_to_string(*f));
      CHECK(oracle_sat(*f, tr, i, env) == oracle_sat(*nf, tr, i, env));
    }
  }
}

TEST_CASE("negated timed until matches the original under the reference") {
  auto f = make_not(parse_formula("( s1 > 0 ) U[1,2] ( s2 > 0 )"));
  auto nf = negation_normal_form(f);
  std::mt19937 rng(7);
  for (int it = 0; it < 60; ++it) {
    auto tr = testgen::random_trace(rng, 10, 2, it % 2 == 0);
    FreezeEnv env;
    for (int i = 0; i < tr.size(); ++i)
      CHECK(oracle_sat(*f, tr, i, env) == oracle_sat(*nf, tr, i, env));
  }
}

TEST_CASE("threshold transform shifts atom thresholds by the comparison sense") {
  auto f = negation_normal_form(parse_formula("s >= 3 && s < 7"));
  auto g = threshold_transform(f, 2.0);
  std::vector<double> t{0}, v{4.0};
  Trace tr(t, v, 1);
  FreezeEnv env;
  // s >= 3+2 fails at s=4, s < 7-2 holds
  CHECK_FALSE(oracle_sat(*g->left, tr, 0, env));
  CHECK(oracle_sat(*g->right, tr, 0, env));
  CHECK_THROWS(threshold_transform(make_not(f), 1.0));
}

TEST_CASE("abs atoms split into separable conjunctions/disjunctions") {
  auto f = parse_formula("freeze(s*1). ( abs(s*1 - s) <= 0.1 )");
  auto g = normalize_atoms(f);
  CHECK(g->left->kind == NodeKind::And);
  CHECK(atom_separable(*g->left->left));
  CHECK(atom_separable(*g->left->right));
  std::mt19937 rng(11);
  for (int it = 0; it < 40; ++it) {
    auto tr = testgen::random_trace(rng, 10, 1, false);
    CHECK(oracle_trace_sat(*f, tr) == oracle_trace_sat(*g, tr));
  }
}
