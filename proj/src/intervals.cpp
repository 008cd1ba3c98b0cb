#include "setderiv/intervals.hpp"

#include <algorithm>

namespace setderiv {

IntervalList normalize_intervals(IntervalList v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](const Interval& i) { return !(i.hi > i.lo); }),
            v.end());
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    IntervalList out;
    for (const auto& i : v) {
        if (!out.empty() && i.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, i.hi);
        else
            out.push_back(i);
    }
    return out;
}

double intervals_length(const IntervalList& a) {
    double s = 0;
    for (const auto& i : a) s += i.length();
    return s;
}

IntervalList intervals_union(const IntervalList& a, const IntervalList& b) {
    IntervalList v = a;
    v.insert(v.end(), b.begin(), b.end());
    return normalize_intervals(std::move(v));
}

IntervalList intervals_intersect(const IntervalList& a, const IntervalList& b) {
    IntervalList out;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double lo = std::max(a[i].lo, b[j].lo);
        double hi = std::min(a[i].hi, b[j].hi);
        if (hi > lo) out.push_back({lo, hi});
        (a[i].hi < b[j].hi ? i : j)++;
    }
    return out;
}

IntervalList intervals_subtract(const IntervalList& a, const IntervalList& b) {
    IntervalList out;
    size_t j = 0;
    for (const auto& ia : a) {
        double cur = ia.lo;
        while (j < b.size() && b[j].hi <= cur) ++j;
        size_t k = j;
        while (k < b.size() && b[k].lo < ia.hi) {
            if (b[k].lo > cur) out.push_back({cur, b[k].lo});
            cur = std::max(cur, b[k].hi);
            if (cur >= ia.hi) break;
            ++k;
        }
        if (cur < ia.hi) out.push_back({cur, ia.hi});
    }
    return out;
}

double intervals_symdiff_length(const IntervalList& a, const IntervalList& b) {
    return intervals_length(a) + intervals_length(b) -
           2 * intervals_length(intervals_intersect(a, b));
}

IntervalList intervals_clip(const IntervalList& a, double lo, double hi) {
    IntervalList out;
    for (const auto& i : a) {
        double l = std::max(i.lo, lo), h = std::min(i.hi, hi);
        if (h > l) out.push_back({l, h});
    }
    return out;
}

}  // namespace setderiv
