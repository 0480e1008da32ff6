#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "stlstar/oracle.hpp"
#include "stlstar/robustness.hpp"
#include "stlstar/suite.hpp"

using namespace stlstar;

TEST_CASE("sliding window extremum equals the naive scan") {
  std::mt19937 rng(60);
  std::uniform_real_distribution<double> vd(-10, 10);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + static_cast<int>(rng() % 30);
    std::vector<double> vals;
    std::vector<int> lo, hi;
    for (int i = 0; i < n; ++i) vals.push_back(vd(rng));
    // Bounds must be non-decreasing, as produced by time-window lookups on
    // sorted timestamps.
    for (int i = 0; i < n; ++i) {
      int l = i + static_cast<int>(rng() % 3);
      if (!lo.empty()) l = std::max(l, lo.back());
      lo.push_back(l);
      int h = l + static_cast<int>(rng() % 5) - 1;
      if (!hi.empty()) h = std::max(h, hi.back());
      hi.push_back(h);
    }
    for (bool mini : {true, false}) {
      auto got = sliding_window_extremum(vals, lo, hi, mini);
      for (int i = 0; i < n; ++i) {
        double want = mini ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
        for (int j = lo[static_cast<std::size_t>(i)];
             j <= hi[static_cast<std::size_t>(i)] && j < n; ++j)
          want = mini ? std::min(want, vals[static_cast<std::size_t>(j)])
                      : std::max(want, vals[static_cast<std::size_t>(j)]);
        CHECK(got[static_cast<std::size_t>(i)] == want);
      }
    }
  }
}

TEST_CASE("exact robustness equals the reference on random inputs") {
  std::mt19937 rng(61);
  for (int it = 0; it < 200; ++it) {
    auto f = testgen::random_formula(rng, 2, 4, it % 3);
    Trace tr = testgen::random_trace(rng, 12, 2, it % 2 == 1);
    CAPTURE(formula_to_string(*f));
    double want = oracle_trace_rho(*f, tr);
    double got = robustness_baseline(SyntaxTree(f), tr);
    if (std::isinf(want))
      CHECK(got == want);
    else
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("robustness negation law") {
  std::mt19937 rng(62);
  for (int it = 0; it < 60; ++it) {
    auto f = testgen::random_formula(rng, 2, 3, it % 2);
    Trace tr = testgen::random_trace(rng, 10, 2, false);
    double rho = oracle_trace_rho(*f, tr);
    if (std::isinf(rho)) continue;
    CHECK(oracle_trace_rho(*make_not(f), tr) == doctest::Approx(-rho));
  }
}

TEST_CASE("conservative range brackets the true robustness") {
  std::mt19937 rng(63);
  for (int it = 0; it < 150; ++it) {
    auto f = testgen::random_formula(rng, 2, 3, it % 3);
    Trace tr = testgen::random_trace(rng, 10, 2, false);
    auto nf = negation_normal_form(f);
    double rho = oracle_trace_rho(*nf, tr);
    if (std::isinf(rho)) continue;
    for (bool exact : {true, false}) {
      auto rg = conservative_range(nf, tr, exact);
      CAPTURE(formula_to_string(*nf));
      CHECK(rg.lo <= rho + 1e-9);
      CHECK(rg.hi >= rho - 1e-9);
    }
  }
}

TEST_CASE("binary search lands within epsilon/2 of the true value") {
  std::mt19937 rng(64);
  const double eps = 0.1;
  for (int it = 0; it < 80; ++it) {
    auto f = testgen::random_formula(rng, 2, 3, it % 3);
    Trace tr = testgen::random_trace(rng, 10, 2, false);
    double want = oracle_trace_rho(*f, tr);
    if (std::isinf(want)) continue;
    for (auto mode : {MonitorMode::Interval, MonitorMode::Baseline}) {
      auto est = robustness(f, tr, eps, mode);
      CAPTURE(formula_to_string(*f));
      CHECK(std::abs(est.estimate - want) <= eps / 2 + 1e-9);
      CHECK(est.hi - est.lo <= eps + 1e-12);
    }
  }
}

TEST_CASE("binary search call counts for the engineered range widths") {
  auto est = robustness(suite::formula("phi1"), suite::ramp_trace_width49(), 0.1);
  CHECK(est.initial.width() == doctest::Approx(49.0).epsilon(1e-12));
  CHECK(est.n_calls == 9);
  auto est2 = robustness(suite::formula("phi2"), suite::ramp_trace_width83(), 0.1);
  CHECK(est2.initial.width() == doctest::Approx(83.0).epsilon(1e-12));
  CHECK(est2.n_calls == 10);
  // epsilon wider than the range: zero calls, estimate = midpoint
  auto est3 = robustness(suite::formula("phi1"), suite::ramp_trace_width49(), 100.0);
  CHECK(est3.n_calls == 0);
  CHECK(est3.estimate ==
        doctest::Approx(0.5 * (est3.initial.lo + est3.initial.hi)));
}

TEST_CASE("sign soundness and threshold implications") {
  std::mt19937 rng(65);
  std::uniform_real_distribution<double> rd(-3.0, 3.0);
  for (int it = 0; it < 100; ++it) {
    auto f = testgen::random_formula(rng, 2, 3, it % 3);
    Trace tr = testgen::random_trace(rng, 10, 2, false);
    double rho = oracle_trace_rho(*f, tr);
    bool sat = oracle_trace_sat(*f, tr);
    if (rho > 0) CHECK(sat);
    if (rho < 0) CHECK_FALSE(sat);
    auto nf = negation_normal_form(f);
    for (int k = 0; k < 5; ++k) {
      double r = rd(rng);
      bool shifted = oracle_trace_sat(*threshold_transform(nf, r), tr);
      CAPTURE(formula_to_string(*f));
      if (shifted) CHECK(rho >= r - 1e-9);
      if (!shifted) CHECK(rho <= r + 1e-9);
    }
  }
}
