#include "fisdim/oscillation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace fisdim::osc {

namespace {

// Compensated accumulator so oscillation sums agree across enumeration orders.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct IndexRange {
    int c0, c1, r0, r1;  // inclusive
};

IndexRange cell_indices(const fif::GridFunction& gf, const Rect& cell) {
    const double tol = 1e-9;
    const auto idx = [&](double t, double lo) { return (t - lo) / gf.step; };
    IndexRange r{};
    r.c0 = static_cast<int>(std::ceil(idx(cell.x.lo, gf.x0) - tol));
    r.c1 = static_cast<int>(std::floor(idx(cell.x.hi, gf.x0) + tol));
    r.r0 = static_cast<int>(std::ceil(idx(cell.y.lo, gf.y0) - tol));
    r.r1 = static_cast<int>(std::floor(idx(cell.y.hi, gf.y0) + tol));
    r.c0 = std::max(r.c0, 0);
    r.r0 = std::max(r.r0, 0);
    r.c1 = std::min(r.c1, gf.size - 1);
    r.r1 = std::min(r.r1, gf.size - 1);
    if (r.c1 - r.c0 < 1 || r.r1 - r.r0 < 1)
        throw ResolutionError("cell contains fewer than 2x2 grid points at this level");
    return r;
}

double osc_indices(const fif::GridFunction& gf, const IndexRange& ir) {
    double lo = gf.at(ir.r0, ir.c0), hi = lo;
    for (int r = ir.r0; r <= ir.r1; ++r) {
        for (int c = ir.c0; c <= ir.c1; ++c) {
            const double v = gf.at(r, c);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi - lo;
}

}  // namespace

double OscVector::norm1() const {
    Kahan s;
    for (double v : entries) s.add(std::abs(v));
    return s.sum;
}

double osc(const fif::GridFunction& gf, const Rect& cell) {
    return osc_indices(gf, cell_indices(gf, cell));
}

double osc_sum(const fif::GridFunction& gf, int n, const grid::Word& p) {
    // The cells {D_pw : w in Sigma^n} are exactly the aligned squares of
    // depth |p| + n inside D_p, so sum over index blocks directly.
    const int depth = p.length() + n;
    if (depth > gf.level)
        throw ResolutionError("osc_sum needs gf level >= n + |p|");
    const Rect dp = grid::cell(gf.N, Rect{{gf.x0, gf.xcoord(gf.size - 1)},
                                          {gf.y0, gf.ycoord(gf.size - 1)}},
                               p);
    const IndexRange outer = cell_indices(gf, dp);
    int span = 1;
    for (int k = 0; k < gf.level - depth; ++k) span *= gf.N;
    const int blocks = (outer.c1 - outer.c0) / span;
    Kahan total;
    for (int br = 0; br < blocks; ++br) {
        for (int bc = 0; bc < blocks; ++bc) {
            IndexRange ir{outer.c0 + bc * span, outer.c0 + (bc + 1) * span,
                          outer.r0 + br * span, outer.r0 + (br + 1) * span};
            total.add(osc_indices(gf, ir));
        }
    }
    return total.sum;
}

OscVector osc_vector(const fif::GridFunction& gf, int n, int k, int margin) {
    if (n + k + margin > gf.level)
        throw ResolutionError("osc_vector needs gf level >= n + k + margin");
    OscVector v;
    v.n = n;
    v.k = k;
    const std::uint64_t count = grid::word_count(gf.N, n);
    v.entries.resize(count);
    const Rect domain{{gf.x0, gf.xcoord(gf.size - 1)}, {gf.y0, gf.ycoord(gf.size - 1)}};
    for (std::uint64_t code = 0; code < count; ++code) {
        const grid::Word w = grid::Word::from_code(code, n, gf.N);
        if (k == 0) {
            v.entries[code] = osc(gf, grid::cell(gf.N, domain, w));
        } else {
            v.entries[code] = osc_sum(gf, k, w);
        }
    }
    return v;
}

OscConstants constants(const fif::FisSystem& sys, int n) {
    OscConstants c;
    c.n = n;
    const double side = sys.nodes.side();
    c.beta = std::sqrt(2.0) * (2.0 * sys.lambda_S * sys.M_f + sys.lambda_q) * side;
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale /= sys.nodes.N;
    c.u_n = c.beta * scale;
    return c;
}

double sampling_slack(const fif::GridFunction& gf) {
    double jump = 0.0;
    for (int r = 0; r < gf.size; ++r) {
        for (int c = 0; c + 1 < gf.size; ++c) {
            jump = std::max(jump, std::abs(gf.at(r, c + 1) - gf.at(r, c)));
            jump = std::max(jump, std::abs(gf.at(c + 1, r) - gf.at(c, r)));
        }
    }
    return 2.0 * jump;
}

void write_csv(const OscVector& v, std::ostream& out) {
    out << "# fisdim oscvector n=" << v.n << " k=" << v.k << "\n";
    char buf[40];
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", v.entries[i]);
        out << i << ',' << buf << "\n";
    }
}

}  // namespace fisdim::osc
