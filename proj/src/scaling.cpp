#include "fisdim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "fisdim/parallel.hpp"

namespace fisdim::scaling {

namespace {

double pow_int(double b, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= b;
    return r;
}

double nudge_down(double v) {
    const double pad = std::max(4.0 * std::numeric_limits<double>::epsilon() * std::abs(v), 1e-13 * std::abs(v));
    return v - pad;
}

double nudge_up(double v) {
    const double pad = std::max(4.0 * std::numeric_limits<double>::epsilon() * std::abs(v), 1e-13 * std::abs(v));
    return v + pad;
}

}  // namespace

std::vector<double> ScalingMatrix::apply(const std::vector<double>& v) const {
    std::vector<double> out(dim, 0.0);
    for (std::uint64_t i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (const Entry& e : rows[i]) acc += e.value * v[e.col];
        out[i] = acc;
    }
    return out;
}

BoundPair cell_bounds(const expr::ExprPtr& S, const grid::NodeGrid& g, const grid::Word& w,
                      int refine) {
    if (refine < 0) throw ValidationError("cell_bounds: refine must be >= 0");
    const Rect dw = grid::cell(g, w);
    int sub = 1;
    for (int r = 0; r < refine; ++r) sub *= g.N;
    const double hx = dw.x.width() / sub;
    const double hy = dw.y.width() / sub;
    BoundPair b;
    b.lo = std::numeric_limits<double>::infinity();
    b.hi = 0.0;
    b.sampled_lo = std::numeric_limits<double>::infinity();
    b.sampled_hi = 0.0;
    for (int r = 0; r < sub; ++r) {
        for (int c = 0; c < sub; ++c) {
            const Rect box{{dw.x.lo + c * hx, dw.x.lo + (c + 1) * hx},
                           {dw.y.lo + r * hy, dw.y.lo + (r + 1) * hy}};
            const Interval iv = interval::abs(expr::eval_interval(S, box));
            b.lo = std::min(b.lo, iv.lo);
            b.hi = std::max(b.hi, iv.hi);
            const double s = std::abs(expr::eval(S, box.x.mid(), box.y.mid()));
            b.sampled_lo = std::min(b.sampled_lo, s);
            b.sampled_hi = std::max(b.sampled_hi, s);
        }
    }
    b.lo = std::max(0.0, b.lo);
    return b;
}

std::pair<ScalingMatrix, ScalingMatrix> build(const expr::ExprPtr& S, const grid::NodeGrid& g,
                                              int n, int refine) {
    if (n < 1) throw ValidationError("build: n must be >= 1");
    const std::uint64_t cells = grid::word_count(g.N, n + 1);
    if (cells > 10'000'000ull) throw ValidationError("build: N^{2(n+1)} exceeds the size guard");
    const std::uint64_t dim = grid::word_count(g.N, n);
    const std::uint64_t base = static_cast<std::uint64_t>(g.N) * g.N;

    std::vector<BoundPair> bounds(cells);
    parallel_for(cells, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t code = lo; code < hi; ++code)
            bounds[code] = cell_bounds(S, g, grid::Word::from_code(code, n + 1, g.N), refine);
    });

    ScalingMatrix up, low;
    up.n = low.n = n;
    up.N = low.N = g.N;
    up.upper = true;
    low.upper = false;
    up.dim = low.dim = dim;
    up.rows.resize(dim);
    low.rows.resize(dim);
    const std::uint64_t prefix_mod = dim / base;  // N^{2(n-1)}
    for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t sigma = i % prefix_mod;  // code of sigma(i), length n-1
        up.rows[i].reserve(base);
        low.rows[i].reserve(base);
        for (std::uint64_t d = 0; d < base; ++d) {
            const std::uint64_t col = sigma * base + d;
            const BoundPair& b = bounds[i * base + d];  // word i . d, length n+1
            up.rows[i].push_back({col, b.hi});
            low.rows[i].push_back({col, b.lo});
        }
    }
    return {std::move(up), std::move(low)};
}

bool is_primitive(const ScalingMatrix& m) {
    const std::uint64_t d = m.dim;
    if (d > 16384) throw ValidationError("is_primitive: matrix too large for pattern squaring");
    const std::size_t words = (d + 63) / 64;
    using Pattern = std::vector<std::uint64_t>;  // d rows of bitset
    Pattern pat(d * words, 0);
    for (std::uint64_t i = 0; i < d; ++i)
        for (const auto& e : m.rows[i])
            if (e.value > 0.0) pat[i * words + e.col / 64] |= 1ull << (e.col % 64);

    const auto all_positive = [&](const Pattern& p) {
        for (std::uint64_t i = 0; i < d; ++i) {
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t expect = ~0ull;
                if (w == words - 1 && d % 64 != 0) expect = (1ull << (d % 64)) - 1;
                if ((p[i * words + w] & expect) != expect) return false;
            }
        }
        return true;
    };

    // Squaring reaches exponent 2^t; stop once past the Wielandt bound.
    const double wielandt = static_cast<double>(d - 1) * static_cast<double>(d - 1) + 1.0;
    double exponent = 1.0;
    Pattern cur = pat;
    while (true) {
        if (all_positive(cur)) return true;
        if (exponent >= wielandt) return false;
        Pattern next(d * words, 0);
        parallel_for(d, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                for (std::uint64_t j = 0; j < d; ++j) {
                    if (cur[i * words + j / 64] >> (j % 64) & 1) {
                        for (std::size_t w = 0; w < words; ++w)
                            next[i * words + w] |= cur[j * words + w];
                    }
                }
            }
        });
        cur = std::move(next);
        exponent *= 2.0;
    }
}

SpectralResult spectral_radius(const ScalingMatrix& m, double tol, int max_iter) {
    SpectralResult res;
    const std::uint64_t d = m.dim;
    std::vector<double> v(d, 1.0 / static_cast<double>(d));
    for (int it = 1; it <= max_iter; ++it) {
        const std::vector<double> w = m.apply(v);
        double norm = 0.0;
        double r_lo = std::numeric_limits<double>::infinity();
        double r_hi = 0.0;
        for (std::uint64_t i = 0; i < d; ++i) {
            norm += w[i];
            if (v[i] > 0.0) {
                const double ratio = w[i] / v[i];
                r_lo = std::min(r_lo, ratio);
                r_hi = std::max(r_hi, ratio);
            } else if (w[i] > 0.0) {
                res.certified = false;
            }
        }
        res.iterations = it;
        if (norm == 0.0) {
            res.rho_lo = res.rho_hi = 0.0;
            res.eigvec = v;
            return res;
        }
        res.rho_lo = std::max(0.0, nudge_down(r_lo));
        res.rho_hi = nudge_up(r_hi);
        for (std::uint64_t i = 0; i < d; ++i) v[i] = w[i] / norm;
        if (r_hi - r_lo <= tol) break;
    }
    res.eigvec = std::move(v);
    return res;
}

std::vector<RhoSequenceEntry> rho_sequence(const expr::ExprPtr& S, const grid::NodeGrid& g,
                                           int n_max, int refine, double tol) {
    if (n_max < 1) throw ValidationError("rho_sequence: n_max must be >= 1");
    std::vector<RhoSequenceEntry> seq;
    for (int n = 1; n <= n_max; ++n) {
        auto [up, low] = build(S, g, n, refine);
        RhoSequenceEntry e;
        e.n = n;
        if (up.dim <= 16384) {
            e.upper_primitive = is_primitive(up);
            e.lower_primitive = is_primitive(low);
        }
        e.upper = spectral_radius(up, tol);
        e.lower = spectral_radius(low, tol);
        if (!e.lower_primitive) e.lower.certified = e.lower.certified && false;
        seq.push_back(std::move(e));
    }
    return seq;
}

double gamma_star(const expr::ExprPtr& S, const grid::NodeGrid& g, int samples, double lambda_S) {
    if (samples < 2) throw ValidationError("gamma_star: samples must be >= 2");
    const double hx = g.side() / (samples - 1);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < samples; ++r) {
        const double y = g.y0 + r * hx;
        for (int c = 0; c < samples; ++c) {
            const double x = g.x0 + c * hx;
            double sum = 0.0;
            for (std::uint64_t code = 0; code < grid::word_count(g.N, 1); ++code) {
                const grid::Word w{{grid::Digit::from_code(code, g.N)}};
                const grid::Point q = grid::map_word(g, w, {x, y});
                sum += std::abs(expr::eval(S, q.x, q.y));
            }
            best = std::min(best, sum);
        }
    }
    const double diag = std::sqrt(2.0) * hx;
    const double correction = lambda_S * g.N * g.N * diag / 2.0;
    return best - correction;
}

ConditionReport check_conditions(const expr::ExprPtr& S, const grid::NodeGrid& g, double lambda_S,
                                 int max_refine) {
    ConditionReport rep;
    for (int r = 1; r <= max_refine; ++r) {
        int sub = 1;
        for (int k = 0; k < r; ++k) sub *= g.N;
        const double hx = g.side() / sub;
        std::uint64_t pos = 0, neg = 0, straddle = 0, identically_zero = 0;
        for (int rr = 0; rr < sub; ++rr) {
            for (int cc = 0; cc < sub; ++cc) {
                const Rect box{{g.x0 + cc * hx, g.x0 + (cc + 1) * hx},
                               {g.y0 + rr * hx, g.y0 + (rr + 1) * hx}};
                const Interval iv = expr::eval_interval(S, box);
                if (iv.lo > 0.0)
                    ++pos;
                else if (iv.hi < 0.0)
                    ++neg;
                else {
                    ++straddle;
                    if (iv.lo == 0.0 && iv.hi == 0.0) ++identically_zero;
                }
            }
        }
        rep.zero_cells = straddle;
        rep.inconclusive_cells = straddle;
        rep.not_identically_zero = identically_zero == 0;
        if (straddle == 0 && (pos == 0 || neg == 0)) {
            rep.sign_definite = true;
            rep.sign = pos > 0 ? 1 : -1;
            break;
        }
        if (pos > 0 && neg > 0) {
            // both signs certified: a zero curve crosses D
            rep.sign_refuted = true;
            rep.zero_curve = true;
            break;
        }
    }

    rep.gamma_star = gamma_star(S, g, 128, lambda_S);
    rep.gamma_ok = rep.gamma_star >= 1.0;
    rep.zero_set_ok = rep.sign_definite || (!rep.zero_curve && rep.zero_cells <= 4);
    rep.gamma_condition = rep.gamma_ok && rep.zero_set_ok;
    return rep;
}

SandwichReport sandwich_check(const fif::FisSystem& sys, const fif::GridFunction& gf, int n, int k,
                              int refine) {
    if (k < 1) throw ValidationError("sandwich_check: k must be >= 1");
    auto [up, low] = build(sys.S, sys.nodes, n, refine);
    const osc::OscVector vk = osc::osc_vector(gf, n, k);
    const osc::OscVector vk1 = osc::osc_vector(gf, n, k - 1, 2);
    const osc::OscConstants cn = osc::constants(sys, n);
    const double nk = pow_int(static_cast<double>(sys.nodes.N), k);

    const std::vector<double> upper_env = up.apply(vk1.entries);
    const std::vector<double> lower_env = low.apply(vk1.entries);

    SandwichReport rep;
    // per-cell max/min deficit, summed over the N^{2k} cells behind each entry
    rep.slack = osc::sampling_slack(gf) * pow_int(static_cast<double>(sys.nodes.N), 2 * k);
    for (std::size_t i = 0; i < vk.entries.size(); ++i) {
        const double hi = upper_env[i] + nk * cn.u_n + rep.slack;
        const double lo = lower_env[i] - nk * cn.u_n - rep.slack;
        rep.worst_upper_violation = std::max(rep.worst_upper_violation, vk.entries[i] - hi);
        rep.worst_lower_violation = std::max(rep.worst_lower_violation, lo - vk.entries[i]);
    }
    rep.pass = rep.worst_upper_violation <= 1e-9 && rep.worst_lower_violation <= 1e-9;
    return rep;
}

void write_matrix_market(const ScalingMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    std::uint64_t nnz = 0;
    for (const auto& row : m.rows) nnz += row.size();
    out << m.dim << ' ' << m.dim << ' ' << nnz << "\n";
    char buf[40];
    for (std::uint64_t i = 0; i < m.dim; ++i) {
        for (const auto& e : m.rows[i]) {
            std::snprintf(buf, sizeof(buf), "%.17g", e.value);
            out << (i + 1) << ' ' << (e.col + 1) << ' ' << buf << "\n";
        }
    }
}

}  // namespace fisdim::scaling
