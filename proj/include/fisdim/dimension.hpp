#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fisdim/scaling.hpp"

namespace fisdim::dim {

struct BoxCountRow {
    int n = 0;
    double eps = 0.0;
    double count = 0.0;  // N-hat(eps_n)
};

struct BoxCountResult {
    std::vector<BoxCountRow> table;
    int n_lo = 0, n_hi = 0;
    double slope = 0.0;  // least-squares slope of log count vs n log N
};

enum class Verdict { Diverging, Bounded, Inconclusive };

struct DivergenceResult {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<double> ratios;  // r_p = O_p(f,D) / N^p, p = 1..p_max
};

struct LowerBoundResult {
    bool available = false;
    double value = 0.0;
    std::string reason;  // why unavailable
};

struct ExactResult {
    enum class Kind { Interval, Two, Inconclusive };
    Kind kind = Kind::Inconclusive;
    double lo = 0.0, hi = 0.0;  // dimension interval when kind == Interval
};

struct DimensionReport {
    // defaults and inputs, recorded for reproducibility
    int N = 0;
    int eval_level = 0;
    int n_max = 0;
    int refine = 0;
    double tol = 0.0;
    double lambda_S = 0.0, lambda_q = 0.0, M_f = 0.0, s_max = 0.0;

    std::vector<scaling::RhoSequenceEntry> rho_seq;
    double rho_upper_hat = 0.0;  // certified over-estimate of rho^*
    double rho_lower_hat = 0.0;  // certified under-estimate of rho_*
    scaling::ConditionReport conditions;

    double upper_bound = 0.0;
    bool upper_hypothesis_verified = true;
    LowerBoundResult lower_bound;
    ExactResult exact;

    BoxCountResult boxcount;
    std::vector<double> osc_estimator;  // e_n sequence
    DivergenceResult divergence;
};

// max{2, 1 + log(rho)/log N}
double dim_upper(double rho_star_hat, int N);

LowerBoundResult dim_lower(double rho_lower_hat, int N, bool diverging,
                           const scaling::ConditionReport& conditions);

ExactResult dim_exact(const scaling::ConditionReport& conditions, double rho_lower_hat,
                      double rho_upper_hat, int N, Verdict divergence);

// Column min/max arithmetic: per level-n cell the number of eps_n-cubes hit
// is floor(max/eps) - floor(min/eps) + 1, z-offset anchored at 0.
BoxCountResult boxcount(const fif::GridFunction& gf, int n_lo, int n_hi);

// e_n = 1 + log(O_n(f,D) + N^n) / (n log N)
std::vector<double> osc_estimator(const fif::GridFunction& gf, int n_max);

// Ratio-growth heuristic for the limsup O_p/N^p = +inf hypothesis.
DivergenceResult divergence_diagnostic(const fif::GridFunction& gf, int p_max);

struct ReportOptions {
    int eval_level = 0;  // 0: use default max(n_max + 2, 6)
    int n_max = 3;
    int refine = 2;
    double tol = 1e-8;
};

// Runs the full pipeline: validation must already have passed.
DimensionReport full_report(fif::FisSystem& sys, const ReportOptions& opt = {});

std::string to_json(const DimensionReport& rep);
void write_text(const DimensionReport& rep, std::ostream& out);
// CSV plot data: n vs log-count, n vs e_n, p vs r_p.
void write_plot_csv(const DimensionReport& rep, std::ostream& out);

}  // namespace fisdim::dim
