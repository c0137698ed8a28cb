#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fisdim/fif.hpp"
#include "fisdim/oscillation.hpp"

namespace fisdim::scaling {

// Certified outer bounds (lo, hi) and sampled inner estimates for |S| on one
// cell D_w. Always lo <= sampled_lo <= sampled_hi <= hi.
struct BoundPair {
    double lo = 0.0;
    double hi = 0.0;
    double sampled_lo = 0.0;
    double sampled_hi = 0.0;
};

// Sparse Sigma^n x Sigma^n matrix: row i has a nonzero in column j exactly
// when sigma(i) is the length-(n-1) prefix of j; each row carries N^2
// entries. kind=upper stores certified s-bar over-estimates, kind=lower
// certified s-underbar under-estimates of the length-(n+1) word i j_n.
struct ScalingMatrix {
    int n = 0;
    int N = 0;
    bool upper = true;
    std::uint64_t dim = 0;  // N^{2n}

    struct Entry {
        std::uint64_t col;
        double value;
    };
    std::vector<std::vector<Entry>> rows;

    std::vector<double> apply(const std::vector<double>& v) const;
};

// Collatz-Wielandt enclosure of the Perron root.
struct SpectralResult {
    double rho_lo = 0.0;
    double rho_hi = 0.0;
    int iterations = 0;
    bool certified = true;  // false when zero rows / zero iterate components appear
    std::vector<double> eigvec;  // 1-norm 1, positive for primitive input
};

struct RhoSequenceEntry {
    int n = 0;
    SpectralResult upper;
    SpectralResult lower;
    bool upper_primitive = false;
    bool lower_primitive = false;
};

struct ConditionReport {
    // S sign-definite on D, decided by interval refinement.
    bool sign_definite = false;
    bool sign_refuted = false;
    int sign = 0;                     // +1 / -1 when verified
    std::uint64_t zero_cells = 0;     // cells whose enclosure straddles 0
    bool zero_curve = false;          // both signs attained: a zero curve exists
    std::uint64_t inconclusive_cells = 0;

    // gamma_* >= 1 plus a finitely-many-zeros heuristic.
    double gamma_star = 0.0;
    bool gamma_ok = false;
    bool zero_set_ok = false;
    bool gamma_condition = false;

    // Required for the upper bound to apply: S not identically zero on any
    // subrectangle (heuristic: no refine cell with enclosure exactly [0,0]).
    bool not_identically_zero = true;
};

// Subdivides D_w into (N^refine)^2 subcells: hi/lo from interval evaluation
// of |S|, sampled values from subcell centers.
BoundPair cell_bounds(const expr::ExprPtr& S, const grid::NodeGrid& g, const grid::Word& w,
                      int refine = 2);

// Builds the pair (upper, lower) at level n from cell bounds of all words of
// length n+1. Guard: N^{2(n+1)} <= 10^7.
std::pair<ScalingMatrix, ScalingMatrix> build(const expr::ExprPtr& S, const grid::NodeGrid& g,
                                              int n, int refine = 2);

// Boolean-pattern squaring up to the Wielandt exponent (d-1)^2 + 1.
bool is_primitive(const ScalingMatrix& m);

// Power iteration with 1-norm normalization from the all-ones vector;
// Collatz-Wielandt bounds give the enclosure at every step.
SpectralResult spectral_radius(const ScalingMatrix& m, double tol = 1e-10, int max_iter = 100000);

std::vector<RhoSequenceEntry> rho_sequence(const expr::ExprPtr& S, const grid::NodeGrid& g,
                                           int n_max, int refine = 2, double tol = 1e-10);

// Heuristic lower estimate of gamma_* = min_D sum_{w in Sigma} |S(L_w(x,y))|:
// grid minimum minus a Lipschitz correction lambda_S N^2 diag/2.
double gamma_star(const expr::ExprPtr& S, const grid::NodeGrid& g, int samples, double lambda_S);

ConditionReport check_conditions(const expr::ExprPtr& S, const grid::NodeGrid& g,
                                 double lambda_S, int max_refine = 5);

// Consistency diagnostic comparing measured oscillation vectors
// against the matrix recursion, within the documented sampling slack.
struct SandwichReport {
    double slack = 0.0;
    double worst_lower_violation = 0.0;  // how far below the lower envelope
    double worst_upper_violation = 0.0;  // how far above the upper envelope
    bool pass = false;
};

SandwichReport sandwich_check(const fif::FisSystem& sys, const fif::GridFunction& gf, int n, int k,
                              int refine = 2);

// Coordinate text export: "%%MatrixMarket matrix coordinate real general",
// then "rows cols nnz", then 1-based "i j value", rows in word-code order.
void write_matrix_market(const ScalingMatrix& m, std::ostream& out);

}  // namespace fisdim::scaling
