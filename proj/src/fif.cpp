#include "fisdim/fif.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>

#include "fisdim/parallel.hpp"

namespace fisdim::fif {

namespace {

// Index of the digit interval containing t in [lo, lo + N*step]; points on a
// shared node resolve to the lower interval.
int digit_index(double t, double lo, double step, int N) {
    const double r = (t - lo) / step;
    int idx = static_cast<int>(std::ceil(r - 1e-12));
    if (idx < 1) idx = 1;
    if (idx > N) idx = N;
    return idx;
}

}  // namespace

double eval_q(const FisSystem& sys, grid::Point p) {
    const auto& g = sys.nodes;
    if (p.x < g.x0 - 1e-12 || p.x > g.xN + 1e-12 || p.y < g.y0 - 1e-12 || p.y > g.yN + 1e-12)
        throw DomainError("eval_q: point outside D");
    const grid::Digit w{digit_index(p.x, g.x0, g.step(), g.N),
                        digit_index(p.y, g.y0, g.step(), g.N)};
    const grid::Point pre = grid::unmap_digit(g, w, p);
    return expr::eval(sys.h, p.x, p.y) - expr::eval(sys.S, p.x, p.y) * expr::eval(sys.g, pre.x, pre.y);
}

ValidationReport validate(FisSystem& sys, int refine) {
    ValidationReport rep;
    const auto& g = sys.nodes;
    char buf[160];

    // |S| < 1 certificate: max interval bound of |S| over a uniform refinement.
    int subdiv = 1;
    for (int r = 0; r < refine; ++r) subdiv *= g.N;
    subdiv = std::max(subdiv, 8);
    double smax = 0.0;
    const double hx = g.side() / subdiv;
    for (int r = 0; r < subdiv; ++r) {
        for (int c = 0; c < subdiv; ++c) {
            const Rect box{{g.x0 + c * hx, g.x0 + (c + 1) * hx},
                           {g.y0 + r * hx, g.y0 + (r + 1) * hx}};
            smax = std::max(smax, interval::abs(expr::eval_interval(sys.S, box)).hi);
        }
    }
    rep.s_max = smax;
    rep.s_max_refine = refine;
    rep.s_max_ok = smax < 1.0;
    if (!rep.s_max_ok) {
        std::snprintf(buf, sizeof(buf), "sup|S| >= 1 (certified bound %.6g)", smax);
        rep.failures.push_back(buf);
    }
    sys.s_max = smax;

    // h interpolates every node, g the four corners.
    for (int j = 0; j <= g.N; ++j) {
        for (int i = 0; i <= g.N; ++i) {
            const double res = std::abs(expr::eval(sys.h, g.x(i), g.y(j)) - g.z[j][i]);
            if (res > rep.h_node_residual) {
                rep.h_node_residual = res;
                rep.h_worst_i = i;
                rep.h_worst_j = j;
            }
        }
    }
    if (rep.h_node_residual > 1e-6) {
        std::snprintf(buf, sizeof(buf), "h(x_i,y_j) != z_ij at node (%d,%d), residual %.3g",
                      rep.h_worst_i, rep.h_worst_j, rep.h_node_residual);
        rep.failures.push_back(buf);
    } else if (rep.h_node_residual > 1e-9) {
        rep.warnings.push_back("h node residual above 1e-9");
    }

    for (int cj : {0, g.N}) {
        for (int ci : {0, g.N}) {
            const double res = std::abs(expr::eval(sys.g, g.x(ci), g.y(cj)) - g.z[cj][ci]);
            rep.g_corner_residual = std::max(rep.g_corner_residual, res);
        }
    }
    if (rep.g_corner_residual > 1e-6) {
        std::snprintf(buf, sizeof(buf), "g does not match z at a corner, residual %.3g",
                      rep.g_corner_residual);
        rep.failures.push_back(buf);
    } else if (rep.g_corner_residual > 1e-9) {
        rep.warnings.push_back("g corner residual above 1e-9");
    }

    // Lipschitz estimates; q is handled piecewise per digit cell.
    rep.lambda_S_overridden = sys.lambda_S_override.has_value();
    rep.lambda_S = sys.lambda_S_override
                       ? *sys.lambda_S_override
                       : expr::lipschitz_estimate(sys.S, g.domain(), 64);
    rep.lambda_q_overridden = sys.lambda_q_override.has_value();
    if (sys.lambda_q_override) {
        rep.lambda_q = *sys.lambda_q_override;
    } else if (rep.ok()) {
        double lam = 0.0;
        for (int j = 1; j <= g.N; ++j) {
            for (int i = 1; i <= g.N; ++i) {
                const Rect box{{g.x(i - 1), g.x(i)}, {g.y(j - 1), g.y(j)}};
                // stay strictly inside the cell so the digit lookup is stable
                const double eps = 1e-9 * g.step();
                const Rect inner{{box.x.lo + eps, box.x.hi - eps}, {box.y.lo + eps, box.y.hi - eps}};
                lam = std::max(lam, expr::lipschitz_estimate_fn(
                                        [&sys](double x, double y) {
                                            return eval_q(sys, grid::Point{x, y});
                                        },
                                        inner, 32));
            }
        }
        rep.lambda_q = lam;
    }
    sys.lambda_S = rep.lambda_S;
    sys.lambda_q = rep.lambda_q;
    return rep;
}

GridFunction evaluate(const FisSystem& sys, int m) {
    if (m < 1) throw ValidationError("evaluate requires level m >= 1");
    const auto& g = sys.nodes;
    double pts = 1.0;
    for (int k = 0; k < m; ++k) pts *= g.N;
    if (pts + 1 > 32769.0) throw ValidationError("evaluation level too large");

    GridFunction cur;
    cur.N = g.N;
    cur.level = 1;
    cur.x0 = g.x0;
    cur.y0 = g.y0;
    cur.step = g.step();
    cur.size = g.N + 1;
    cur.values.resize(static_cast<std::size_t>(cur.size) * cur.size);
    for (int r = 0; r < cur.size; ++r)
        for (int c = 0; c < cur.size; ++c)
            cur.values[static_cast<std::size_t>(r) * cur.size + c] = g.z[r][c];

    const double nan = std::nan("");
    double worst_mismatch = 0.0;
    std::mutex mismatch_mu;

    for (int k = 1; k < m; ++k) {
        GridFunction next;
        next.N = g.N;
        next.level = k + 1;
        next.x0 = g.x0;
        next.y0 = g.y0;
        next.size = g.N * (cur.size - 1) + 1;
        next.step = g.side() / (next.size - 1);
        next.values.assign(static_cast<std::size_t>(next.size) * next.size, nan);

        const int span = cur.size - 1;  // N^k
        for (std::uint64_t code = 0; code < grid::word_count(g.N, 1); ++code) {
            const grid::Digit d = grid::Digit::from_code(code, g.N);
            // index-space images of the digit maps (exact integer arithmetic)
            const auto map_col = [&](int c) {
                return d.i % 2 == 1 ? (d.i - 1) * span + c : d.i * span - c;
            };
            const auto map_row = [&](int r) {
                return d.j % 2 == 1 ? (d.j - 1) * span + r : d.j * span - r;
            };
            parallel_for(cur.size, [&](std::size_t rlo, std::size_t rhi) {
                double local_worst = 0.0;
                for (std::size_t r = rlo; r < rhi; ++r) {
                    const int tr = map_row(static_cast<int>(r));
                    const double py = cur.ycoord(static_cast<int>(r));
                    const double ty = next.ycoord(tr);
                    for (int c = 0; c < cur.size; ++c) {
                        const int tc = map_col(c);
                        const double px = cur.xcoord(c);
                        const double tx = next.xcoord(tc);
                        const double val =
                            expr::eval(sys.S, tx, ty) *
                                (cur.at(static_cast<int>(r), c) - expr::eval(sys.g, px, py)) +
                            expr::eval(sys.h, tx, ty);
                        double& slot = next.values[static_cast<std::size_t>(tr) * next.size + tc];
                        if (std::isnan(slot)) {
                            slot = val;
                        } else {
                            local_worst = std::max(local_worst, std::abs(slot - val));
                        }
                    }
                }
                if (local_worst > 0.0) {
                    std::lock_guard<std::mutex> lk(mismatch_mu);
                    worst_mismatch = std::max(worst_mismatch, local_worst);
                }
            });
        }
        next.boundary_mismatch = worst_mismatch;
        if (worst_mismatch > 1e-6)
            throw ValidationError("cell-boundary values disagree beyond 1e-6; q is inconsistent");
        cur = std::move(next);
    }
    cur.boundary_mismatch = worst_mismatch;
    return cur;
}

double sup_abs_f(const GridFunction& gf) {
    double m = 0.0;
    for (double v : gf.values) m = std::max(m, std::abs(v));
    return m;
}

GridFunction evaluate_and_record(FisSystem& sys, int m) {
    GridFunction gf = evaluate(sys, m);
    sys.M_f = 1.05 * sup_abs_f(gf);
    return gf;
}

void write_csv(const GridFunction& gf, std::ostream& out) {
    out << "# fisdim level=" << gf.level << " N=" << gf.N << "\n";
    char buf[40];
    for (int r = 0; r < gf.size; ++r) {
        for (int c = 0; c < gf.size; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", gf.at(r, c));
            if (c) out << ',';
            out << buf;
        }
        out << "\n";
    }
}

}  // namespace fisdim::fif
