#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fisdim/expr.hpp"
#include "fisdim/grid.hpp"

namespace fisdim::fif {

// Validated bundle of node data and the three defining functions. lambda_S,
// lambda_q, s_max are filled by validate(); M_f after the first evaluation.
struct FisSystem {
    grid::NodeGrid nodes;
    expr::ExprPtr S;
    expr::ExprPtr g;
    expr::ExprPtr h;

    double lambda_S = 0.0;   // Lipschitz estimate (or user override) for S
    double lambda_q = 0.0;   // Lipschitz estimate (or user override) for q
    double s_max = 1.0;      // certified upper bound of sup |S|
    double M_f = 0.0;        // inflated sup-|f| estimate

    std::optional<double> lambda_S_override;
    std::optional<double> lambda_q_override;
};

// Exact samples of the attractor f on the uniform (N^m+1)^2 grid of level m.
struct GridFunction {
    int N = 0;
    int level = 0;
    double x0 = 0.0, y0 = 0.0;
    double step = 0.0;                // side / N^level
    int size = 0;                     // points per axis, N^level + 1
    std::vector<double> values;       // row-major: values[r*size + c], r = y index
    double boundary_mismatch = 0.0;   // worst disagreement on shared cell edges

    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * size + c]; }
    double xcoord(int c) const { return x0 + c * step; }
    double ycoord(int r) const { return y0 + r * step; }
};

struct ValidationReport {
    double s_max = 0.0;
    int s_max_refine = 0;
    bool s_max_ok = false;

    double h_node_residual = 0.0;   // worst |h(x_i,y_j) - z_ij|
    int h_worst_i = 0, h_worst_j = 0;
    double g_corner_residual = 0.0;

    double lambda_S = 0.0;
    double lambda_q = 0.0;
    bool lambda_S_overridden = false;
    bool lambda_q_overridden = false;

    std::vector<std::string> failures;
    std::vector<std::string> warnings;

    bool ok() const { return failures.empty(); }
};

// q(x,y) = h(x,y) - S(x,y) g(L_w^{-1}(x,y)) for the digit cell containing the
// point; ties on shared edges resolve to the lowest digit code.
double eval_q(const FisSystem& sys, grid::Point p);

// Checks |S| < 1 (interval certificate), node interpolation of h, corner
// interpolation of g, and estimates lambda_S / lambda_q. Fills the
// corresponding FisSystem fields. refine controls the certification grid
// (N^refine subdivisions per axis).
ValidationReport validate(FisSystem& sys, int refine = 2);

// Forward recursion from the node data: level-1 values are z_ij and level
// k+1 points are exactly the images of level-k points under the N^2 maps.
// Throws if values reached through two digits disagree beyond 1e-6.
GridFunction evaluate(const FisSystem& sys, int m);

// Max |value| over the grid; a lower estimate of sup |f|.
double sup_abs_f(const GridFunction& gf);

// Runs evaluate and stores M_f = 1.05 * sup_abs_f in the system.
GridFunction evaluate_and_record(FisSystem& sys, int m);

// CSV heightmap, one row per grid row, header "# fisdim level=<m> N=<N>".
void write_csv(const GridFunction& gf, std::ostream& out);

}  // namespace fisdim::fif
