// Interval algebra over boolean signals sampled at trace timestamps.
//
// A boolean signal is stored either as a truth vector (PointVector, one
// flag per sample, values below valid_from are stale) or as a sorted list
// of maximal true runs (IntervalList, inclusive sample-index pairs).
//
// Temporal operators go through real-valued time intervals: back-shift by
// the operator window, then trim to the largest enclosed run of sample
// timestamps. Every result is exact for the pointwise semantics: before
// back-shifting, each source run is split wherever consecutive timestamps
// are more than (window.hi - window.lo) apart, because a window narrower
// than a sampling gap can overlap a run without containing any sample.

#ifndef STLSTAR_INTERVALS_HPP
#define STLSTAR_INTERVALS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "formula.hpp"
#include "trace.hpp"

namespace stlstar {

struct IndexInterval {
  int lo = 0;
  int hi = 0;  // inclusive
  friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

using IntervalList = std::vector<IndexInterval>;

struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Truth vector; entries below valid_from are stale leftovers from earlier
// environments and must be ignored by consumers.
struct PointVector {
  std::vector<std::uint8_t> truth;
  int valid_from = 0;

  int size() const { return static_cast<int>(truth.size()); }
  std::string display() const {
    std::string out;
    for (int i = 0; i < size(); ++i)
      out += (i < valid_from) ? "-" : (truth[static_cast<std::size_t>(i)] ? "T" : "F");
    return out;
  }
};

// Maximal true runs of p at indices >= from. Linear scan.
inline IntervalList transform(const PointVector& p, int from) {
  IntervalList out;
  int n = p.size();
  int i = std::max(from, p.valid_from);
  while (i < n) {
    while (i < n && !p.truth[static_cast<std::size_t>(i)]) ++i;
    if (i >= n) break;
    int j = i;
    while (j + 1 < n && p.truth[static_cast<std::size_t>(j + 1)]) ++j;
    out.push_back({i, j});
    i = j + 1;
  }
  return out;
}

inline PointVector to_points(const IntervalList& l, int n, int valid_from = 0) {
  PointVector p;
  p.truth.assign(static_cast<std::size_t>(n), 0);
  p.valid_from = valid_from;
  for (const auto& iv : l)
    for (int i = std::max(iv.lo, 0); i <= iv.hi && i < n; ++i)
      p.truth[static_cast<std::size_t>(i)] = 1;
  return p;
}

inline bool contains_index(const IntervalList& l, int i) {
  auto it = std::upper_bound(l.begin(), l.end(), i,
                             [](int v, const IndexInterval& iv) { return v < iv.lo; });
  if (it == l.begin()) return false;
  --it;
  return i <= it->hi;
}

// Clips a sorted list to indices >= from.
inline IntervalList clip_from(const IntervalList& l, int from) {
  IntervalList out;
  out.reserve(l.size());
  for (const auto& iv : l) {
    if (iv.hi < from) continue;
    out.push_back({std::max(iv.lo, from), iv.hi});
  }
  return out;
}

// Union of possibly overlapping interval runs; merges touching runs so the
// result is again a list of maximal runs.
inline IntervalList normalize_union(IntervalList l) {
  std::sort(l.begin(), l.end(), [](const IndexInterval& a, const IndexInterval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalList out;
  for (const auto& iv : l) {
    if (!out.empty() && iv.lo <= out.back().hi + 1)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  return out;
}

// Complement over [from, n-1].
inline IntervalList combine_not(const IntervalList& l, int n, int from) {
  IntervalList out;
  int cursor = from;
  for (const auto& iv : l) {
    if (iv.hi < from) continue;
    int lo = std::max(iv.lo, from);
    if (lo > cursor) out.push_back({cursor, lo - 1});
    cursor = iv.hi + 1;
  }
  if (cursor <= n - 1) out.push_back({cursor, n - 1});
  return out;
}

inline IntervalList combine_and(const IntervalList& a, const IntervalList& b, int from) {
  IntervalList out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int lo = std::max(a[i].lo, b[j].lo);
    int hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi && hi >= from) out.push_back({std::max(lo, from), hi});
    if (a[i].hi < b[j].hi) ++i;
    else ++j;
  }
  return out;
}

inline IntervalList combine_or(const IntervalList& a, const IntervalList& b, int from) {
  IntervalList merged = a;
  merged.insert(merged.end(), b.begin(), b.end());
  return clip_from(normalize_union(std::move(merged)), from);
}

// [m, n] (-) [a, b] = [m - b, n - a]
inline RealInterval back_shift(const RealInterval& iv, const TimeWindow& w) {
  return {iv.lo - w.hi, iv.hi - w.lo};
}

// Largest run of sample timestamps [tau_i, tau_j] contained in the real
// interval, restricted to indices >= min_index. Uniform traces resolve in
// O(1) index arithmetic inside first_at_or_after / last_at_or_before.
inline bool trim(const RealInterval& iv, const Trace& tr, int min_index,
                 IndexInterval& out) {
  if (!(iv.lo <= iv.hi)) return false;
  int lo = tr.first_at_or_after(iv.lo);
  if (lo < min_index) lo = min_index;
  int hi = tr.last_at_or_before(iv.hi);
  if (lo >= tr.size() || hi < lo) return false;
  out = {lo, hi};
  return true;
}

inline IntervalList trim_list(const std::vector<RealInterval>& real,
                              const Trace& tr, int min_index) {
  IntervalList out;
  for (const auto& r : real) {
    IndexInterval iv;
    if (trim(r, tr, min_index, iv)) out.push_back(iv);
  }
  return normalize_union(std::move(out));
}

namespace detail {

// Splits the index run [lo, hi] into maximal pieces whose consecutive
// timestamp gaps are <= max_gap, then applies fn(lo', hi') to each piece.
template <typename Fn>
void for_gap_runs(const Trace& tr, int lo, int hi, double max_gap, Fn&& fn) {
  int start = lo;
  for (int i = lo + 1; i <= hi; ++i) {
    if (tr.time(i) - tr.time(i - 1) > max_gap) {
      fn(start, i - 1);
      start = i;
    }
  }
  fn(start, hi);
}

inline double window_span(const TimeWindow& w) {
  return w.unbounded() ? std::numeric_limits<double>::infinity() : w.hi - w.lo;
}

}  // namespace detail

// F_[a,b]: exists a sample j in the shifted window with the child true.
inline IntervalList eventually(const IntervalList& child, const TimeWindow& w,
                               const Trace& tr, int min_index) {
  std::vector<RealInterval> pieces;
  double span = detail::window_span(w);
  for (const auto& iv : child) {
    detail::for_gap_runs(tr, iv.lo, iv.hi, span, [&](int lo, int hi) {
      double rlo = w.unbounded() ? -std::numeric_limits<double>::infinity()
                                 : tr.time(lo) - w.hi;
      pieces.push_back({rlo, tr.time(hi) - w.lo});
    });
  }
  return trim_list(pieces, tr, min_index);
}

// G_[a,b] by duality; vacuous truth at indices whose window holds no sample
// falls out of the complement over [min_index, n-1].
inline IntervalList always(const IntervalList& child, const TimeWindow& w,
                           const Trace& tr, int min_index) {
  IntervalList not_child = combine_not(child, tr.size(), min_index);
  IntervalList ev = eventually(not_child, w, tr, min_index);
  return combine_not(ev, tr.size(), min_index);
}

// phi1 U_[a,b] phi2. For each phi1 run I (extended one sample to the right,
// because phi1 is only needed strictly before the witness) and phi2 run J,
// the witnesses are the samples of I+ cap J; back-shift each gap run of
// witnesses and keep starts inside I. A witness at distance 0 needs no
// phi1 at all, hence the extra union with phi2 when a == 0.
inline IntervalList until_op(const IntervalList& left, const IntervalList& right,
                             const TimeWindow& w, const Trace& tr, int min_index) {
  int n = tr.size();
  std::vector<RealInterval> pieces;
  IntervalList out;
  double span = detail::window_span(w);
  for (const auto& I : left) {
    int ext_hi = std::min(I.hi + 1, n - 1);
    for (const auto& J : right) {
      int c = std::max(I.lo, J.lo);
      int d = std::min(ext_hi, J.hi);
      if (c > d) continue;
      detail::for_gap_runs(tr, c, d, span, [&](int lo, int hi) {
        double rlo = w.unbounded() ? -std::numeric_limits<double>::infinity()
                                   : tr.time(lo) - w.hi;
        RealInterval shifted{rlo, tr.time(hi) - w.lo};
        // starts must satisfy phi1 themselves: intersect with I
        shifted.lo = std::max(shifted.lo, tr.time(I.lo));
        shifted.hi = std::min(shifted.hi, tr.time(I.hi));
        if (shifted.lo <= shifted.hi) pieces.push_back(shifted);
      });
    }
  }
  out = trim_list(pieces, tr, min_index);
  if (w.lo == 0.0) out = combine_or(out, right, min_index);
  return out;
}

// R dual: phi1 R_I phi2 == not(not phi1 U_I not phi2).
inline IntervalList release_op(const IntervalList& left, const IntervalList& right,
                               const TimeWindow& w, const Trace& tr, int min_index) {
  int n = tr.size();
  IntervalList nl = combine_not(left, n, min_index);
  IntervalList nr = combine_not(right, n, min_index);
  return combine_not(until_op(nl, nr, w, tr, min_index), n, min_index);
}

}  // namespace stlstar

#endif  // STLSTAR_INTERVALS_HPP
