#pragma once

#include <random>
#include <vector>

#include "fisdim/config.hpp"
#include "fisdim/dimension.hpp"

namespace testutil {

using namespace fisdim;

// Samples an arbitrary expression on the level-m uniform grid, producing the
// same GridFunction layout the attractor evaluator emits.
inline fif::GridFunction sample_expr(const expr::ExprPtr& e, int N, const Rect& domain, int m) {
    fif::GridFunction gf;
    gf.N = N;
    gf.level = m;
    gf.x0 = domain.x.lo;
    gf.y0 = domain.y.lo;
    int pts = 1;
    for (int k = 0; k < m; ++k) pts *= N;
    gf.size = pts + 1;
    gf.step = domain.x.width() / pts;
    gf.values.resize(static_cast<std::size_t>(gf.size) * gf.size);
    for (int r = 0; r < gf.size; ++r)
        for (int c = 0; c < gf.size; ++c)
            gf.values[static_cast<std::size_t>(r) * gf.size + c] =
                expr::eval(e, gf.xcoord(c), gf.ycoord(r));
    return gf;
}

// The standard 2x2 system used throughout: h = x*y, g = x^2*y on [0,1]^2.
inline fif::FisSystem make_test_system(const std::string& s_text, int eval_level_unused = 0) {
    (void)eval_level_unused;
    std::vector<std::vector<double>> z{{0, 0, 0}, {0, 0.25, 0.5}, {0, 0.5, 1}};
    fif::FisSystem sys{grid::NodeGrid(2, 0, 1, 0, 1, z), expr::parse(s_text),
                       expr::parse("x^2*y"), expr::parse("x*y")};
    return sys;
}

inline fif::FisSystem make_plane_system(const std::string& s_text) {
    std::vector<std::vector<double>> z{{0.25, 0.5, 0.75}, {0.375, 0.625, 0.875}, {0.5, 0.75, 1.0}};
    const char* plane = "0.25+0.5*x+0.25*y";
    fif::FisSystem sys{grid::NodeGrid(2, 0, 1, 0, 1, z), expr::parse(s_text), expr::parse(plane),
                       expr::parse(plane)};
    return sys;
}

// Wraps a dense matrix as a ScalingMatrix so the spectral routines can be
// exercised on hand-made patterns.
inline scaling::ScalingMatrix dense_matrix(const std::vector<std::vector<double>>& a) {
    scaling::ScalingMatrix m;
    m.dim = a.size();
    m.rows.resize(m.dim);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != 0.0) m.rows[i].push_back({j, a[i][j]});
    return m;
}

// Random expression trees for round-trip properties. Literals are kept
// nonnegative so printing reproduces the parsed structure exactly.
inline expr::ExprPtr random_expr(std::mt19937& rng, int depth) {
    using expr::Expr;
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    std::uniform_real_distribution<double> lit(0.0, 10.0);
    switch (pick(rng)) {
        case 0: return Expr::num(lit(rng));
        case 1: return Expr::var_x();
        case 2: return Expr::var_y();
        case 3: return Expr::neg(random_expr(rng, depth - 1));
        case 4:
            return Expr::bin(static_cast<expr::BinOp>(std::uniform_int_distribution<int>(0, 4)(rng)),
                             random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 5: return Expr::call(expr::Fun::Sin, {random_expr(rng, depth - 1)});
        case 6: return Expr::call(expr::Fun::Abs, {random_expr(rng, depth - 1)});
        case 7: return Expr::call(expr::Fun::Exp, {random_expr(rng, depth - 1)});
        case 8:
            return Expr::call(expr::Fun::Min,
                              {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
        default:
            return Expr::call(expr::Fun::Max,
                              {random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    }
}

}  // namespace testutil

#ifdef FISDIM_HAVE_EIGEN
#include <Eigen/Eigenvalues>

namespace testutil {

// Independent dense oracle for the Perron root.
inline double dense_spectral_radius(const std::vector<std::vector<double>>& a) {
    const Eigen::Index n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[i][j];
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    double rho = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) rho = std::max(rho, std::abs(es.eigenvalues()[i]));
    return rho;
}

}  // namespace testutil
#endif
