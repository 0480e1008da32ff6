// Deterministic trace generators over a fixed 100-second horizon.
//
// Each kind is defined as a function of continuous time so the same
// underlying signal can be resampled at any rate; features sit at fixed
// times, which keeps interval counts stable across sampling densities.
//
//   pulse       rectangular wave between +1 and -1, half period 10
//   driftpulse  pulse plus a small square jitter (amplitude 0.04) in the
//               low segments; breaks derivative-band checks while staying
//               inside a 0.1 band of the segment start value
//   stabilize   step signal: 3, peak 10, dip 5, peak 12, settle at 11
//   stairs      repeating staircase 0 -> 2 -> 4 -> 0, 10 s per level
//   crossing    2-d: s1 ramps over thresholds 5 and 10 then drops,
//               s2 low early and high during the final phase
//
// pulse/driftpulse/stabilize/stairs emit the discrete backward-difference
// derivative as dimension 2 (first sample 0).

#ifndef STLSTAR_GENERATORS_HPP
#define STLSTAR_GENERATORS_HPP

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "trace.hpp"

namespace stlstar {

enum class TraceKind { Pulse, DriftPulse, Stabilize, Stairs, Crossing };

inline TraceKind trace_kind_from_name(const std::string& name) {
  if (name == "pulse") return TraceKind::Pulse;
  if (name == "driftpulse") return TraceKind::DriftPulse;
  if (name == "stabilize") return TraceKind::Stabilize;
  if (name == "stairs") return TraceKind::Stairs;
  if (name == "crossing") return TraceKind::Crossing;
  throw std::runtime_error("unknown trace kind: " + name);
}

namespace detail {

constexpr double kHorizon = 100.0;

inline double pulse_base(double t) {
  return std::fmod(t, 20.0) < 10.0 ? 1.0 : -1.0;
}

inline double driftpulse_value(double t) {
  double base = pulse_base(t);
  if (base > 0.0) return base;
  // square jitter, period 5 s, amplitude 0.04, low segments only
  double j = std::fmod(t, 5.0) < 2.5 ? 0.04 : -0.04;
  return base + j;
}

inline double stabilize_value(double t) {
  if (t < 15.0) return 3.0;
  if (t < 25.0) return 10.0;   // first event plateau
  if (t < 35.0) return 5.0;
  if (t < 45.0) return 12.0;   // second event plateau
  return 11.0;                 // settle inside [0.8, 1.2] * (10+12)/2
}

inline double stairs_value(double t) {
  double phase = std::fmod(t, 30.0);
  if (phase < 10.0) return 0.0;
  if (phase < 20.0) return 2.0;
  return 4.0;
}

inline void crossing_value(double t, double& s1, double& s2) {
  // s1: 0 for a while, through 5 and 10, plateau at 12, drop to 0 at the end
  if (t < 10.0) s1 = 0.0;
  else if (t < 20.0) s1 = 7.0;
  else if (t < 30.0) s1 = 12.0;
  else if (t < 90.0) s1 = 12.0;
  else s1 = 0.0;
  // s2: 2 while s1 is up, then large until s1 drops
  if (t < 40.0) s2 = 2.0;
  else s2 = 10.0;
}

}  // namespace detail

// Generates n samples of the requested kind. noise adds a uniform value in
// [-noise, +noise] to every dimension; nonuniform draws the timestamps
// uniformly at random over the horizon (sorted, minimum gap 1e-6). All
// randomness is driven by seed.
inline Trace generate(TraceKind kind, int n, double noise = 0.0,
                      bool nonuniform = false, std::uint64_t seed = 0) {
  if (n < 2) throw std::runtime_error("generate: need at least 2 samples");
  std::mt19937_64 rng(seed);

  std::vector<double> times(static_cast<std::size_t>(n));
  if (nonuniform) {
    std::uniform_real_distribution<double> dist(0.0, detail::kHorizon);
    for (auto& t : times) t = dist(rng);
    std::sort(times.begin(), times.end());
    times.front() = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i)
      if (times[i] < times[i - 1] + 1e-6) times[i] = times[i - 1] + 1e-6;
  } else {
    double step = detail::kHorizon / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) times[static_cast<std::size_t>(i)] = step * i;
  }

  int dim = 2;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * 2);

  auto scalar = [&](double (*fn)(double)) {
    // dimension 1: the signal; dimension 2: backward-difference derivative
    std::vector<double> raw(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = fn(times[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n; ++i) {
      double d = 0.0;
      if (i > 0)
        d = (raw[static_cast<std::size_t>(i)] - raw[static_cast<std::size_t>(i - 1)]) /
            (times[static_cast<std::size_t>(i)] - times[static_cast<std::size_t>(i - 1)]);
      values.push_back(raw[static_cast<std::size_t>(i)]);
      values.push_back(d);
    }
  };

  switch (kind) {
    case TraceKind::Pulse:      scalar(&detail::pulse_base); break;
    case TraceKind::DriftPulse: scalar(&detail::driftpulse_value); break;
    case TraceKind::Stabilize:  scalar(&detail::stabilize_value); break;
    case TraceKind::Stairs:     scalar(&detail::stairs_value); break;
    case TraceKind::Crossing: {
      for (int i = 0; i < n; ++i) {
        double s1, s2;
        detail::crossing_value(times[static_cast<std::size_t>(i)], s1, s2);
        values.push_back(s1);
        values.push_back(s2);
      }
      break;
    }
  }

  if (noise > 0.0) {
    std::uniform_real_distribution<double> dist(-noise, noise);
    for (auto& v : values) v += dist(rng);
  }

  return Trace(std::move(times), std::move(values), dim);
}

}  // namespace stlstar

#endif  // STLSTAR_GENERATORS_HPP
