// Benchmark and demo fixtures: named properties with matching generated
// traces (one satisfying, one violating per property).

#ifndef STLSTAR_SUITE_HPP
#define STLSTAR_SUITE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "generators.hpp"
#include "parser.hpp"
#include "trace.hpp"

namespace stlstar::suite {

// phi1: two stabilization events, then the signal stays within 20% of the
//       average of the two frozen event values.
// phi2: on the 2-d crossing signal, after freezing s2 twice, s2 exceeds the
//       frozen sum until s1 drops below 5.
// phi3: oscillation pattern: hold near the frozen value, jump away by at
//       least 1.5, hold near the new value, return.
// phi4: three-step staircase pattern with three frozen levels.
// psi:  derivative-based variant of phi3 (dimension 2 carries the backward
//       difference); clean pulses pass, drifting pulses fail.
inline std::string formula_text(const std::string& name) {
  if (name == "phi1")
    return "F ( s >= 8 && freeze(s*1). ( F ( s >= 11 && freeze(s*2). "
           "G[2,60] ( s in [0.8*((s*1 + s*2)/2), 1.2*((s*1 + s*2)/2)] ) ) ) )";
  if (name == "phi2")
    return "F ( freeze(s2*1). ( F ( freeze(s2*2). "
           "( (s2 > s2*1 + s2*2) U (s1 < 5) ) ) ) )";
  if (name == "phi3")
    return "G[0,55] ( freeze(s*1). ( (abs(s*1 - s) <= 0.1) U "
           "( (abs(s*1 - s) >= 1.5) && freeze(s*2). ( (abs(s*2 - s) <= 0.1) U "
           "(abs(s*1 - s) <= 0.1) ) ) ) )";
  if (name == "phi4")
    return "G[0,85] ( s >= 0.5 || freeze(s*1). ( (abs(s*1 - s) <= 0.1) U "
           "( (s - s*1 >= 1.5) && freeze(s*2). ( (abs(s*2 - s) <= 0.1) U "
           "( (s - s*2 >= 1.5) && freeze(s*3). ( (abs(s*3 - s) <= 0.1) U "
           "(s <= s*1 + 0.1) ) ) ) ) ) )";
  if (name == "psi")
    return "G[0,55] ( freeze(s*1). ( (abs(s2) <= 0.01) U "
           "( (abs(s*1 - s) >= 1.5) && freeze(s*2). ( (abs(s2) <= 0.01) U "
           "(abs(s*1 - s) <= 0.1) ) ) ) )";
  throw std::runtime_error("unknown suite formula: " + name);
}

inline FormulaPtr formula(const std::string& name) {
  return parse_formula(formula_text(name));
}

inline TraceKind sat_kind(const std::string& name) {
  if (name == "phi1") return TraceKind::Stabilize;
  if (name == "phi2") return TraceKind::Crossing;
  if (name == "phi3" || name == "psi") return TraceKind::Pulse;
  if (name == "phi4") return TraceKind::Stairs;
  throw std::runtime_error("unknown suite formula: " + name);
}

inline Trace sat_trace(const std::string& name, int n, unsigned seed = 1) {
  return generate(sat_kind(name), n, 0.0, false, seed);
}

// Violating counterparts, derived from the satisfying shapes so the
// constraint value distributions stay comparable:
//  - phi1: scaled down so the first event never fires,
//  - phi2: s1 shifted up so the until witness never appears,
//  - phi3/phi4: flat line, the jump never happens,
//  - psi: the drifting pulse (passes phi3, fails the derivative bound).
inline Trace violating_trace(const std::string& name, int n,
                             unsigned seed = 1) {
  if (name == "psi") return generate(TraceKind::DriftPulse, n, 0.0, false, seed);
  Trace base = sat_trace(name, n, seed);
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(base.size() * base.dim()));
  for (int i = 0; i < base.size(); ++i)
    for (int d = 1; d <= base.dim(); ++d) {
      double v = base.value(i, d);
      if (name == "phi1") v *= 0.6;
      else if (name == "phi2") v = (d == 1) ? v + 10.0 : v;
      else v = 0.0;
      vals.push_back(v);
    }
  return Trace(base.times(), std::move(vals), base.dim());
}

// ---------------------------------------------------------------------------
// Robustness binary-search fixtures with exactly known conservative ranges.
// ---------------------------------------------------------------------------

// Ramp over [3, 3 + 245/11]; with the phi1 property the widest atom is the
// upper band bound, giving range width 2.2 * (max - min) = 49.
inline Trace ramp_trace_width49(int n = 12) {
  std::vector<double> t, v;
  double span = 245.0 / 11.0;
  for (int i = 0; i < n; ++i) {
    t.push_back(static_cast<double>(i));
    v.push_back(3.0 + span * i / (n - 1));
  }
  return Trace(std::move(t), std::move(v), 1);
}

// 2-d trace with s2 ramping over [0, 83/3]; with the phi2 property the
// dominant atom is s2 > s2*1 + s2*2, giving range width 3 * max(s2) = 83.
inline Trace ramp_trace_width83(int n = 12) {
  std::vector<double> t, v;
  double top = 83.0 / 3.0;
  for (int i = 0; i < n; ++i) {
    t.push_back(static_cast<double>(i));
    v.push_back(5.0 + 10.0 * i / (n - 1));  // s1 in [5,15]
    v.push_back(top * i / (n - 1));         // s2 in [0, 83/3]
  }
  return Trace(std::move(t), std::move(v), 2);
}

// ---------------------------------------------------------------------------
// Worked-example inputs: an 11-point trace whose constraint subformula
// produces the documented sorted order and interval lists, with two
// single-sample trigger events.
// ---------------------------------------------------------------------------

inline Trace running_example_trace() {
  std::vector<double> t, v;
  const double s[] = {3, 5, 8, 10, 14, 12, 11, 6, 3, 1, 7};
  for (int i = 0; i < 11; ++i) {
    t.push_back(static_cast<double>(i));
    v.push_back(s[i]);
  }
  return Trace(std::move(t), std::move(v), 1);
}

inline std::string running_example_text() {
  // e1 holds only at index 3 (value 10), e2 only at index 6 (value 11).
  return "F ( s in [9.5,10.5] && freeze(s*1). ( F ( s in [10.5,11.5] && "
         "freeze(s*2). G[2,1000] ( s <= 0.8*((s*1 + s*2)/2) ) ) ) )";
}

}  // namespace stlstar::suite

#endif  // STLSTAR_SUITE_HPP
