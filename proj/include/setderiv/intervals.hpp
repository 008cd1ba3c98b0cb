#pragma once

#include <vector>

namespace setderiv {

/// Half-open interval [lo, hi) on the fiber coordinate t.
struct Interval {
    double lo = 0, hi = 0;
    double length() const { return hi - lo; }
};

using IntervalList = std::vector<Interval>;

/// Sort, drop empties, merge overlapping or touching intervals.
IntervalList normalize_intervals(IntervalList v);

double intervals_length(const IntervalList& a);
IntervalList intervals_union(const IntervalList& a, const IntervalList& b);
IntervalList intervals_intersect(const IntervalList& a, const IntervalList& b);
IntervalList intervals_subtract(const IntervalList& a, const IntervalList& b);
/// Length of the symmetric difference (exact on the encoding).
double intervals_symdiff_length(const IntervalList& a, const IntervalList& b);
/// Clip to [lo, hi).
IntervalList intervals_clip(const IntervalList& a, double lo, double hi);

}  // namespace setderiv
