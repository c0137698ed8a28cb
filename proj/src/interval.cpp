#include "fisdim/interval.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fisdim::interval {

namespace {

double down(double v) {
    if (!std::isfinite(v)) return v;
    return std::nextafter(v, -std::numeric_limits<double>::infinity());
}

double up(double v) {
    if (!std::isfinite(v)) return v;
    return std::nextafter(v, std::numeric_limits<double>::infinity());
}

Interval outward(double lo, double hi) { return Interval{down(lo), up(hi)}; }

}  // namespace

Interval make(double lo, double hi) {
    if (!(lo <= hi)) throw DomainError("interval endpoints out of order");
    return Interval{lo, hi};
}

Interval point(double v) { return Interval{v, v}; }

Interval hull(const Interval& a, const Interval& b) {
    return Interval{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval add(const Interval& a, const Interval& b) { return outward(a.lo + b.lo, a.hi + b.hi); }

Interval sub(const Interval& a, const Interval& b) { return outward(a.lo - b.hi, a.hi - b.lo); }

Interval mul(const Interval& a, const Interval& b) {
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return outward(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

Interval div(const Interval& a, const Interval& b) {
    if (b.lo <= 0.0 && 0.0 <= b.hi) throw DomainError("interval division by interval containing zero");
    const double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return outward(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

Interval neg(const Interval& a) { return Interval{-a.hi, -a.lo}; }

Interval abs(const Interval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return neg(a);
    return Interval{0.0, std::max(-a.lo, a.hi)};
}

Interval sqrt(const Interval& a) {
    if (a.lo < 0.0) throw DomainError("sqrt of interval with negative part");
    return outward(std::sqrt(a.lo), std::sqrt(a.hi));
}

Interval exp(const Interval& a) { return outward(std::exp(a.lo), std::exp(a.hi)); }

namespace {

// Range of sin on [lo, hi]: endpoint values plus +-1 wherever a critical
// point pi/2 + k*pi falls inside the interval.
Interval sin_range(double lo, double hi) {
    using std::numbers::pi;
    if (hi - lo >= 2.0 * pi) return Interval{-1.0, 1.0};
    double rlo = std::min(std::sin(lo), std::sin(hi));
    double rhi = std::max(std::sin(lo), std::sin(hi));
    // k with lo <= pi/2 + k*pi <= hi
    const long k0 = static_cast<long>(std::ceil((lo - pi / 2.0) / pi)) - 1;
    for (long k = k0; k <= k0 + 3; ++k) {
        const double c = pi / 2.0 + static_cast<double>(k) * pi;
        if (lo <= c && c <= hi) {
            if (k % 2 == 0)
                rhi = 1.0;
            else
                rlo = -1.0;
        }
    }
    // the endpoints may themselves carry ~ulp(arg) error (e.g. the pi/2 shift
    // used for cos), so pad by more than one ulp of the value
    const double pad = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    return Interval{std::max(rlo, -1.0) - pad, std::min(rhi, 1.0) + pad};
}

}  // namespace

Interval sin(const Interval& a) { return sin_range(a.lo, a.hi); }

Interval cos(const Interval& a) {
    using std::numbers::pi;
    return sin_range(a.lo + pi / 2.0, a.hi + pi / 2.0);
}

Interval min(const Interval& a, const Interval& b) {
    return Interval{std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Interval max(const Interval& a, const Interval& b) {
    return Interval{std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval pow_int(const Interval& a, long k) {
    if (k < 0) throw DomainError("negative integer exponent not supported");
    if (k == 0) return point(1.0);
    if (k % 2 == 0) {
        const Interval m = abs(a);
        return outward(std::pow(m.lo, static_cast<double>(k)), std::pow(m.hi, static_cast<double>(k)));
    }
    return outward(std::pow(a.lo, static_cast<double>(k)), std::pow(a.hi, static_cast<double>(k)));
}

Interval pow_real(const Interval& a, const Interval& b) {
    if (a.lo <= 0.0) throw DomainError("power with non-positive base requires integer exponent");
    const double c1 = std::pow(a.lo, b.lo), c2 = std::pow(a.lo, b.hi);
    const double c3 = std::pow(a.hi, b.lo), c4 = std::pow(a.hi, b.hi);
    return outward(std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4}));
}

}  // namespace fisdim::interval
