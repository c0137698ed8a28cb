#pragma once

#include <algorithm>
#include <cmath>

#include "fisdim/errors.hpp"

namespace fisdim {

// Closed interval [lo, hi] with outward rounding after every operation, so a
// computed interval always encloses the exact real result.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

// Axis-aligned rectangle; the geometric home of every cell D_w.
struct Rect {
    Interval x;
    Interval y;

    double diameter() const { return std::hypot(x.width(), y.width()); }
};

namespace interval {

Interval make(double lo, double hi);
Interval point(double v);
Interval hull(const Interval& a, const Interval& b);

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
Interval div(const Interval& a, const Interval& b);
Interval neg(const Interval& a);

Interval abs(const Interval& a);
Interval sqrt(const Interval& a);
Interval exp(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);

// a^k for literal integer k >= 0 (even powers stay nonnegative).
Interval pow_int(const Interval& a, long k);
// a^b for general b; requires a.lo > 0.
Interval pow_real(const Interval& a, const Interval& b);

}  // namespace interval

}  // namespace fisdim
