#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "stlstar/generators.hpp"
#include "stlstar/trace.hpp"

using namespace stlstar;

TEST_CASE("csv round trip preserves times and values") {
  std::mt19937 rng(5);
  Trace tr = testgen::random_trace(rng, 20, 2, true);
  std::ostringstream os;
  save_csv(tr, os);
  std::istringstream is(os.str());
  Trace back = load_csv(is);
  REQUIRE(back.size() == tr.size());
  REQUIRE(back.dim() == tr.dim());
  for (int i = 0; i < tr.size(); ++i) {
    CHECK(back.time(i) == doctest::Approx(tr.time(i)).epsilon(1e-12));
    for (int d = 1; d <= tr.dim(); ++d)
      CHECK(back.value(i, d) == doctest::Approx(tr.value(i, d)).epsilon(1e-12));
  }
}

TEST_CASE("csv loader validates header and monotone times") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return load_csv(is);
  };
  CHECK_THROWS(parse("wrong,s1\n0,1\n"));
  CHECK_THROWS(parse("time,s1\n0,1\n0,2\n"));
  CHECK_THROWS(parse("time,s1\n0\n"));
  Trace tr = parse("time,s1,s2\r\n0,1,2\r\n1,3,4\r\n");
  CHECK(tr.dim() == 2);
  CHECK(tr.value(1, 2) == 4.0);
}

TEST_CASE("index searches agree between uniform and general paths") {
  std::vector<double> t, v;
  for (int i = 0; i < 50; ++i) {
    t.push_back(0.5 * i);
    v.push_back(0.0);
  }
  Trace tr(t, v, 1);
  REQUIRE(tr.uniform());
  for (double q : {-1.0, 0.0, 0.25, 0.5, 12.3, 24.5, 30.0}) {
    int lin = tr.size();
    for (int i = 0; i < tr.size(); ++i)
      if (tr.time(i) >= q) { lin = i; break; }
    CHECK(tr.first_at_or_after(q) == lin);
    int lb = -1;
    for (int i = 0; i < tr.size(); ++i)
      if (tr.time(i) <= q) lb = i;
    CHECK(tr.last_at_or_before(q) == lb);
  }
}

TEST_CASE("generators are deterministic and shaped as documented") {
  Trace a = generate(TraceKind::Pulse, 100, 0.0, false, 0);
  Trace b = generate(TraceKind::Pulse, 100, 0.0, false, 0);
  REQUIRE(a.size() == 100);
  CHECK(a.dim() == 2);  // derivative channel
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a.time(i) == b.time(i));
    CHECK(a.value(i, 1) == b.value(i, 1));
    CHECK((a.value(i, 1) == 1.0 || a.value(i, 1) == -1.0));
  }
  Trace c = generate(TraceKind::Crossing, 60, 0.0, false, 1);
  CHECK(c.dim() == 2);
  Trace d = generate(TraceKind::Stairs, 60, 0.0, false, 1);
  for (int i = 0; i < d.size(); ++i)
    CHECK((d.value(i, 1) == 0.0 || d.value(i, 1) == 2.0 || d.value(i, 1) == 4.0));
}

TEST_CASE("nonuniform generation keeps the horizon and strict monotonicity") {
  Trace tr = generate(TraceKind::Pulse, 200, 0.0, true, 42);
  REQUIRE(tr.size() == 200);
  CHECK(tr.time(0) == 0.0);
  for (int i = 1; i < tr.size(); ++i) CHECK(tr.time(i) > tr.time(i - 1));
  CHECK(tr.end_time() <= 100.0 + 1e-9);
}
