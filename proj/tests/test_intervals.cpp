#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "stlstar/intervals.hpp"
#include "stlstar/oracle.hpp"
#include "stlstar/parser.hpp"

using namespace stlstar;

namespace {

Trace uniform_trace(int n) {
  std::vector<double> t, v;
  for (int i = 0; i < n; ++i) {
    t.push_back(static_cast<double>(i));
    v.push_back(0.0);
  }
  return Trace(std::move(t), std::move(v), 1);
}

Trace nonuniform18() {
  const double ts[] = {0, 1, 2,  4,  5,  7,  8,  10, 11,
                       13, 15, 17, 20, 25, 27, 30, 35, 40};
  std::vector<double> t(std::begin(ts), std::end(ts)), v(18, 0.0);
  return Trace(std::move(t), std::move(v), 1);
}

IntervalList by_time(std::initializer_list<std::pair<double, double>> xs,
                     const Trace& tr) {
  IntervalList l;
  for (const auto& p : xs)
    l.push_back({tr.first_at_or_after(p.first), tr.last_at_or_before(p.second)});
  return l;
}

std::vector<std::pair<double, double>> times_of(const IntervalList& l,
                                                const Trace& tr) {
  std::vector<std::pair<double, double>> out;
  for (const auto& iv : l) out.emplace_back(tr.time(iv.lo), tr.time(iv.hi));
  return out;
}

IntervalList random_list(std::mt19937& rng, int n) {
  PointVector p;
  p.valid_from = 0;
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < n; ++i) p.truth.push_back(bit(rng) != 0);
  return transform(p, 0);
}

}  // namespace

TEST_CASE("boolean combinations on the worked uniform and nonuniform traces") {
  Trace p1 = uniform_trace(100), p2 = nonuniform18();
  auto f1u = by_time({{2, 10}, {20, 35}}, p1);
  auto f2u = by_time({{7, 15}}, p1);
  auto f1n = by_time({{2, 10}, {20, 35}}, p2);

  CHECK(times_of(combine_not(f1u, p1.size(), 0), p1) ==
        std::vector<std::pair<double, double>>{{0, 1}, {11, 19}, {36, 99}});
  CHECK(times_of(combine_not(f1n, p2.size(), 0), p2) ==
        std::vector<std::pair<double, double>>{{0, 1}, {11, 17}, {40, 40}});
  CHECK(times_of(combine_and(f1u, f2u, 0), p1) ==
        std::vector<std::pair<double, double>>{{7, 10}});
  CHECK(times_of(combine_or(f1u, f2u, 0), p1) ==
        std::vector<std::pair<double, double>>{{2, 15}, {20, 35}});
  CHECK(combine_not(IntervalList{}, 5, 0) == IntervalList{{0, 4}});
  CHECK(combine_and(f1u, IntervalList{{0, 99}}, 0) == f1u);
}

TEST_CASE("timed eventually on the worked traces") {
  Trace p1 = uniform_trace(100), p2 = nonuniform18();
  auto f1u = by_time({{2, 10}, {20, 35}}, p1);
  auto f1n = by_time({{2, 10}, {20, 35}}, p2);
  CHECK(times_of(eventually(f1u, TimeWindow{1, 3}, p1, 0), p1) ==
        std::vector<std::pair<double, double>>{{0, 9}, {17, 34}});
  // The pointwise-exact result on the gappy trace: at t=20 and t=30 the
  // window [t+1,t+3] contains no sample at all.
  CHECK(times_of(eventually(f1n, TimeWindow{1, 3}, p2, 0), p2) ==
        std::vector<std::pair<double, double>>{{0, 8}, {17, 17}, {25, 27}});
  CHECK(eventually(IntervalList{}, TimeWindow{1, 3}, p1, 0).empty());
}

TEST_CASE("timed until on the worked traces") {
  Trace p1 = uniform_trace(100), p2 = nonuniform18();
  auto u1 = until_op(by_time({{2, 10}, {20, 35}}, p1), by_time({{7, 15}}, p1),
                     TimeWindow{2, 4}, p1, 0);
  // Pointwise-exact: index 9 also qualifies (witness at time 11).
  CHECK(times_of(u1, p1) == std::vector<std::pair<double, double>>{{3, 9}});
  auto u2 = until_op(by_time({{2, 10}, {20, 35}}, p2), by_time({{7, 15}}, p2),
                     TimeWindow{2, 4}, p2, 0);
  CHECK(times_of(u2, p2) == std::vector<std::pair<double, double>>{{4, 8}});
  CHECK(until_op(by_time({{2, 10}}, p1), {}, TimeWindow{0, 4}, p1, 0).empty());
}

TEST_CASE("transform of the documented point vector") {
  Trace tr = uniform_trace(11);
  PointVector p;
  p.valid_from = 0;
  for (bool b : {true, true, true, false, false, true, false, true, true, true, true})
    p.truth.push_back(b);
  CHECK(times_of(transform(p, 0), tr) ==
        std::vector<std::pair<double, double>>{{0, 2}, {5, 5}, {7, 10}});
}

TEST_CASE("trim snaps real intervals to enclosed sample runs") {
  Trace p2 = nonuniform18();
  IndexInterval out{};
  REQUIRE(trim(RealInterval{17.0, 34.0}, p2, 0, out));
  CHECK(p2.time(out.lo) == 17.0);
  CHECK(p2.time(out.hi) == 30.0);
  Trace p1 = uniform_trace(100);
  REQUIRE(trim(RealInterval{-1.0, 9.0}, p1, 0, out));
  CHECK(out == IndexInterval{0, 9});
  CHECK_FALSE(trim(RealInterval{12.1, 12.9}, p1, 0, out));
  // min_index clip
  REQUIRE(trim(RealInterval{0.0, 9.0}, p1, 4, out));
  CHECK(out == IndexInterval{4, 9});
}

TEST_CASE("back_shift arithmetic") {
  RealInterval r = back_shift(RealInterval{20.0, 35.0}, TimeWindow{1, 3});
  CHECK(r.lo == 17.0);
  CHECK(r.hi == 34.0);
}

TEST_CASE("transform and to_points are mutually inverse") {
  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + static_cast<int>(rng() % 20);
    auto l = random_list(rng, n);
    CHECK(transform(to_points(l, n), 0) == l);
  }
}

TEST_CASE("algebra laws: De Morgan and eventually monotonicity") {
  std::mt19937 rng(9);
  for (int it = 0; it < 100; ++it) {
    int n = 2 + static_cast<int>(rng() % 18);
    Trace tr = uniform_trace(n);
    auto a = random_list(rng, n), b = random_list(rng, n);
    CHECK(combine_not(combine_and(a, b, 0), n, 0) ==
          combine_or(combine_not(a, n, 0), combine_not(b, n, 0), 0));
    auto sub = combine_and(a, b, 0);  // sub subset of a
    auto ea = eventually(a, TimeWindow{1, 3}, tr, 0);
    auto es = eventually(sub, TimeWindow{1, 3}, tr, 0);
    for (int i = 0; i < n; ++i)
      if (contains_index(es, i)) CHECK(contains_index(ea, i));
  }
}

TEST_CASE("always is the dual of eventually") {
  std::mt19937 rng(17);
  for (int it = 0; it < 200; ++it) {
    int n = 2 + static_cast<int>(rng() % 18);
    Trace tr = uniform_trace(n);
    auto l = random_list(rng, n);
    TimeWindow w{static_cast<double>(rng() % 3), 0};
    w.hi = w.lo + 1.0 + static_cast<double>(rng() % 4);
    CHECK(always(l, w, tr, 0) ==
          combine_not(eventually(combine_not(l, n, 0), w, tr, 0), n, 0));
  }
  Trace tr = uniform_trace(10);
  IntervalList full{{0, 9}};
  CHECK(always(full, TimeWindow{2, 5}, tr, 0) == full);
}

TEST_CASE("every interval operator agrees pointwise with the reference") {
  std::mt19937 rng(31);
  auto lit = [](bool bit) {
    // encode an interval-list membership question as a trace over {0,1}
    return parse_formula(bit ? "s1 > 0.5" : "s2 > 0.5");
  };
  for (int it = 0; it < 500; ++it) {
    Trace shape = testgen::random_trace(rng, 20, 1, it % 2 == 1);
    int n = shape.size();
    std::vector<double> vals;
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<int> abits, bbits;
    for (int i = 0; i < n; ++i) {
      abits.push_back(bit(rng));
      bbits.push_back(bit(rng));
      vals.push_back(abits.back());
      vals.push_back(bbits.back());
    }
    Trace tr(shape.times(), vals, 2);
    PointVector pa, pb;
    pa.valid_from = pb.valid_from = 0;
    for (int i = 0; i < n; ++i) {
      pa.truth.push_back(abits[static_cast<std::size_t>(i)] != 0);
      pb.truth.push_back(bbits[static_cast<std::size_t>(i)] != 0);
    }
    auto la = transform(pa, 0), lb = transform(pb, 0);
    TimeWindow w{static_cast<double>(rng() % 3), 0};
    w.hi = (rng() % 4 == 0) ? std::numeric_limits<double>::infinity()
                            : w.lo + 1.0 + static_cast<double>(rng() % 5);
    std::string ws = w.unbounded() ? "" : "[" + std::to_string(w.lo) + "," +
                                              std::to_string(w.hi) + "]";
    if (w.unbounded() && w.lo > 0)
      ws = "[" + std::to_string(w.lo) + ",100000]";
    FreezeEnv env;
    auto check_op = [&](const IntervalList& got, const FormulaPtr& ref) {
      for (int i = 0; i < n; ++i) {
        CAPTURE(it);
        CAPTURE(i);
        CAPTURE(formula_to_string(*ref));
        CHECK(contains_index(got, i) == oracle_sat(*ref, tr, i, env));
      }
    };
    check_op(eventually(la, w, tr, 0),
             parse_formula("F" + ws + " ( s1 > 0.5 )"));
    check_op(always(la, w, tr, 0), parse_formula("G" + ws + " ( s1 > 0.5 )"));
    check_op(until_op(la, lb, w, tr, 0),
             parse_formula("( s1 > 0.5 ) U" + ws + " ( s2 > 0.5 )"));
    // Release(a, b) is defined as not(not a U not b).
    check_op(release_op(la, lb, w, tr, 0),
             make_not(make_temporal(NodeKind::Until, w, make_not(lit(true)),
                                    make_not(lit(false)))));
  }
}
