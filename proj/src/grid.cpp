#include "fisdim/grid.hpp"

#include <cmath>

#include "fisdim/errors.hpp"

namespace fisdim::grid {

NodeGrid::NodeGrid(int N_, double x0_, double xN_, double y0_, double yN_,
                   std::vector<std::vector<double>> z_)
    : N(N_), x0(x0_), xN(xN_), y0(y0_), yN(yN_), z(std::move(z_)) {
    if (N < 2) throw ValidationError("N must be >= 2");
    if (!(x0 < xN) || !(y0 < yN)) throw ValidationError("domain endpoints out of order");
    if (std::abs((xN - x0) - (yN - y0)) > 1e-12 * std::abs(xN - x0))
        throw ValidationError("domain must be square: |I| = |J| is required");
    if (z.size() != static_cast<std::size_t>(N + 1))
        throw ValidationError("z must be (N+1) x (N+1)");
    for (const auto& row : z)
        if (row.size() != static_cast<std::size_t>(N + 1))
            throw ValidationError("z must be (N+1) x (N+1)");
}

Word Word::from_code(std::uint64_t code, int n, int N) {
    const std::uint64_t base = static_cast<std::uint64_t>(N) * N;
    Word w;
    w.digits.resize(n);
    for (int k = n - 1; k >= 0; --k) {
        w.digits[k] = Digit::from_code(code % base, N);
        code /= base;
    }
    if (code != 0) throw ValidationError("word code out of range for given length");
    return w;
}

std::uint64_t Word::code(int N) const {
    const std::uint64_t base = static_cast<std::uint64_t>(N) * N;
    std::uint64_t c = 0;
    for (const Digit& d : digits) c = c * base + d.code(N);
    return c;
}

Word Word::appended(Digit d) const {
    Word w = *this;
    w.digits.push_back(d);
    return w;
}

Word shift(const Word& w) {
    if (w.digits.empty()) throw ValidationError("shift of the empty word");
    Word r;
    r.digits.assign(w.digits.begin() + 1, w.digits.end());
    return r;
}

namespace {

AffineMap1D axis_map(const NodeGrid& g, int idx, bool y_axis) {
    const double lo = y_axis ? g.y0 : g.x0;
    AffineMap1D m{};
    const double node_lo = lo + (idx - 1) * g.step();
    const double node_hi = lo + idx * g.step();
    if (idx % 2 == 1) {
        m.a = 1.0 / g.N;
        m.b = node_lo - m.a * lo;
    } else {
        m.a = -1.0 / g.N;
        m.b = node_hi - m.a * lo;
    }
    return m;
}

}  // namespace

std::vector<AffineMap1D> make_maps(const NodeGrid& g, bool y_axis) {
    std::vector<AffineMap1D> maps;
    maps.reserve(g.N);
    for (int i = 1; i <= g.N; ++i) maps.push_back(axis_map(g, i, y_axis));
    return maps;
}

Point map_word(const NodeGrid& g, const Word& w, Point p) {
    // rightmost digit applies first
    for (auto it = w.digits.rbegin(); it != w.digits.rend(); ++it) {
        p.x = axis_map(g, it->i, false)(p.x);
        p.y = axis_map(g, it->j, true)(p.y);
    }
    return p;
}

Point unmap_digit(const NodeGrid& g, Digit w, Point p) {
    return Point{axis_map(g, w.i, false).inverse(p.x), axis_map(g, w.j, true).inverse(p.y)};
}

Rect cell(const NodeGrid& g, const Word& w) {
    return cell(g.N, g.domain(), w);
}

Rect cell(int N, const Rect& domain, const Word& w) {
    Interval ix = domain.x, iy = domain.y;
    const auto apply = [N](const Interval& full, int idx, const Interval& t) {
        const double step = full.width() / N;
        AffineMap1D m{};
        if (idx % 2 == 1) {
            m.a = 1.0 / N;
            m.b = (full.lo + (idx - 1) * step) - m.a * full.lo;
        } else {
            m.a = -1.0 / N;
            m.b = (full.lo + idx * step) - m.a * full.lo;
        }
        return m.image(t);
    };
    for (auto it = w.digits.rbegin(); it != w.digits.rend(); ++it) {
        ix = apply(domain.x, it->i, ix);
        iy = apply(domain.y, it->j, iy);
    }
    return Rect{ix, iy};
}

std::uint64_t word_count(int N, int n) {
    std::uint64_t c = 1;
    for (int k = 0; k < 2 * n; ++k) c *= static_cast<std::uint64_t>(N);
    return c;
}

}  // namespace fisdim::grid
