#pragma once

#include <iosfwd>
#include <vector>

#include "fisdim/fif.hpp"

namespace fisdim::osc {

// Entries indexed by word code in Sigma^n: entry[w] = O_k(f, D_w).
struct OscVector {
    int n = 0;
    int k = 0;
    std::vector<double> entries;

    double norm1() const;
};

// beta = sqrt(2) (2 lambda_S M_f + lambda_q) |I|; (u_n)_j = beta N^{-n}.
struct OscConstants {
    int n = 0;
    double beta = 0.0;
    double u_n = 0.0;
};

// max - min of the grid samples inside the closed cell; a lower estimate of
// the true oscillation, converging as the sampling level grows.
double osc(const fif::GridFunction& gf, const Rect& cell);

// O_n(f, D_p) = sum over w in Sigma^n of O(f, D_pw).
double osc_sum(const fif::GridFunction& gf, int n, const grid::Word& p);

// Requires n + k + margin <= gf.level; the extra levels keep the per-cell
// max/min close to the true sup/inf.
OscVector osc_vector(const fif::GridFunction& gf, int n, int k, int margin = 2);

OscConstants constants(const fif::FisSystem& sys, int n);

// 2 x the largest adjacent-sample jump; used as slack in sandwich checks.
double sampling_slack(const fif::GridFunction& gf);

// CSV "word_code,value" with header "# fisdim oscvector n=<n> k=<k>".
void write_csv(const OscVector& v, std::ostream& out);

}  // namespace fisdim::osc
