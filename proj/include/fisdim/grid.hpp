#pragma once

#include <cstdint>
#include <vector>

#include "fisdim/interval.hpp"

namespace fisdim::grid {

// Interpolation nodes (x_i, y_j, z_ij) on a uniform square grid over D = I x J.
// Only the square uniform case is constructible: N per axis, |I| = |J|.
struct NodeGrid {
    int N;                                 // subdivisions per axis, >= 2
    double x0, xN, y0, yN;                 // endpoints of I and J
    std::vector<std::vector<double>> z;    // (N+1) x (N+1), z[j][i] = z_ij

    NodeGrid(int N, double x0, double xN, double y0, double yN,
             std::vector<std::vector<double>> z);

    double side() const { return xN - x0; }        // |I| = |J|
    double step() const { return side() / N; }
    double x(int i) const { return x0 + i * step(); }
    double y(int j) const { return y0 + j * step(); }
    Rect domain() const { return Rect{{x0, xN}, {y0, yN}}; }
};

// One symbol of the digit set Sigma = {1..N} x {1..N}; code is the row-major
// index (i-1) + N*(j-1) in [0, N^2).
struct Digit {
    int i;
    int j;

    static Digit from_code(std::uint64_t code, int N) {
        return Digit{static_cast<int>(code % N) + 1, static_cast<int>(code / N) + 1};
    }
    std::uint64_t code(int N) const {
        return static_cast<std::uint64_t>(i - 1) + static_cast<std::uint64_t>(N) * (j - 1);
    }
    bool operator==(const Digit&) const = default;
};

// Finite word over Sigma; the empty word plays the role of the identity.
// Codes are MSB-first base-N^2, so numeric order equals lexicographic order.
struct Word {
    std::vector<Digit> digits;

    static Word empty() { return Word{}; }
    static Word from_code(std::uint64_t code, int n, int N);

    int length() const { return static_cast<int>(digits.size()); }
    std::uint64_t code(int N) const;
    Word appended(Digit d) const;
    bool operator==(const Word&) const = default;
};

// Drops the first digit (the shift sigma); error on the empty word.
Word shift(const Word& w);

// x -> a*x + b
struct AffineMap1D {
    double a;
    double b;

    double operator()(double x) const { return a * x + b; }
    double inverse(double x) const { return (x - b) / a; }
    Interval image(const Interval& t) const {
        const double p = (*this)(t.lo), q = (*this)(t.hi);
        return Interval{std::min(p, q), std::max(p, q)};
    }
};

struct Point {
    double x;
    double y;
};

// The affine maps u_i (and v_j, same construction) with the odd/even
// orientation flip: odd i maps (x0 -> x_{i-1}, xN -> x_i), even i swaps the
// endpoints. Slope is (-1)^{i+1}/N.
std::vector<AffineMap1D> make_maps(const NodeGrid& g, bool y_axis = false);

// L_w = L_{w_1} o ... o L_{w_n} applied to p; identity for the empty word.
Point map_word(const NodeGrid& g, const Word& w, Point p);

// Inverse of the single-digit map L_w.
Point unmap_digit(const NodeGrid& g, Digit w, Point p);

// D_w = L_w(D); a square of side |I| / N^{|w|}.
Rect cell(const NodeGrid& g, const Word& w);
Rect cell(int N, const Rect& domain, const Word& w);

// Number of words of length n: N^{2n}.
std::uint64_t word_count(int N, int n);

}  // namespace fisdim::grid
