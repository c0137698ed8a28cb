#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"

using namespace fisdim;
using testutil::sample_expr;

namespace {

const Rect kUnit{{0, 1}, {0, 1}};

}  // namespace

TEST_CASE("osc of monotone samples is max minus min") {
    const auto gf = sample_expr(expr::parse("x*y"), 2, kUnit, 4);
    CHECK(osc::osc(gf, kUnit) == doctest::Approx(1.0));
    CHECK(osc::osc(gf, Rect{{0, 0.5}, {0, 0.5}}) == doctest::Approx(0.25));
    // off-lattice-aligned cell: extremes at (0.25,0.25) and (0.75,0.75)
    CHECK(osc::osc(gf, Rect{{0.25, 0.75}, {0.25, 0.75}}) == doctest::Approx(0.5));
}

TEST_CASE("osc raises when the cell holds fewer than 2x2 samples") {
    const auto gf = sample_expr(expr::parse("x"), 2, kUnit, 2);  // step 0.25
    CHECK_THROWS_AS(osc::osc(gf, Rect{{0.1, 0.2}, {0.1, 0.2}}), ResolutionError);
}

TEST_CASE("oscillation sum of x+y has a closed form") {
    // On a square of side s the oscillation of x+y is 2s, attained at lattice
    // corners, so O_n = N^{2n} * 2 N^{-n} = 2 N^n exactly.
    for (int N : {2, 3}) {
        const auto gf = sample_expr(expr::parse("x+y"), N, kUnit, 4);
        for (int n = 1; n <= 3; ++n)
            CHECK(osc::osc_sum(gf, n, grid::Word::empty()) ==
                  doctest::Approx(2.0 * std::pow(N, n)).epsilon(1e-12));
    }
}

TEST_CASE("osc_sum restricted to a subcell") {
    // Over D_p the same closed form scales: sum over Sigma^n of O(x+y, D_pw)
    // equals N^{2n} * 2 N^{-(n+1)} = 2 N^{n-1}.
    const auto gf = sample_expr(expr::parse("x+y"), 2, kUnit, 5);
    for (std::uint64_t pc = 0; pc < 4; ++pc) {
        const grid::Word p = grid::Word::from_code(pc, 1, 2);
        CHECK(osc::osc_sum(gf, 2, p) == doctest::Approx(2.0 * 2.0).epsilon(1e-12));
    }
}

TEST_CASE("osc_sum additivity over first-level cells") {
    const auto gf = sample_expr(expr::parse("sin(3*x)*cos(2*y) + x*x"), 2, kUnit, 6);
    const double whole = osc::osc_sum(gf, 3, grid::Word::empty());
    double split = 0.0;
    for (std::uint64_t pc = 0; pc < 4; ++pc)
        split += osc::osc_sum(gf, 2, grid::Word::from_code(pc, 1, 2));
    CHECK(whole == doctest::Approx(split).epsilon(1e-12));
}

TEST_CASE("osc_vector entries and norm") {
    const auto gf = sample_expr(expr::parse("x*y"), 2, kUnit, 6);
    const osc::OscVector v = osc::osc_vector(gf, 2, 1);
    CHECK(v.entries.size() == 16);
    for (std::uint64_t code = 0; code < 16; ++code)
        CHECK(v.entries[code] ==
              doctest::Approx(osc::osc_sum(gf, 1, grid::Word::from_code(code, 2, 2)))
                  .epsilon(1e-14));
    CHECK(v.norm1() == doctest::Approx(osc::osc_sum(gf, 3, grid::Word::empty())).epsilon(1e-12));

    const osc::OscVector v0 = osc::osc_vector(gf, 2, 0);
    CHECK(v0.entries[0] == doctest::Approx(osc::osc(gf, Rect{{0, 0.25}, {0, 0.25}})));
}

TEST_CASE("osc_vector resolution guard") {
    const auto gf = sample_expr(expr::parse("x"), 2, kUnit, 4);
    CHECK_THROWS_AS(osc::osc_vector(gf, 2, 2), ResolutionError);  // needs level >= 6
    CHECK_NOTHROW(osc::osc_vector(gf, 1, 1));
}

TEST_CASE("norm1 is stable under entry order") {
    std::mt19937 rng(99);
    std::vector<double> vals(4096);
    for (double& v : vals) v = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    osc::OscVector a;
    a.entries = vals;
    std::shuffle(vals.begin(), vals.end(), rng);
    osc::OscVector b;
    b.entries = vals;
    CHECK(a.norm1() == doctest::Approx(b.norm1()).epsilon(1e-15));
}

TEST_CASE("constants follow the definition") {
    auto sys = testutil::make_test_system("0.6");
    sys.lambda_S = 0.5;
    sys.lambda_q = 2.0;
    sys.M_f = 1.1;
    const auto c = osc::constants(sys, 3);
    const double beta = std::sqrt(2.0) * (2.0 * 0.5 * 1.1 + 2.0) * 1.0;
    CHECK(c.beta == doctest::Approx(beta));
    CHECK(c.u_n == doctest::Approx(beta / 8.0));
}

TEST_CASE("sampling slack of a linear surface") {
    const auto gf = sample_expr(expr::parse("x + 0.5*y"), 2, kUnit, 4);
    CHECK(osc::sampling_slack(gf) == doctest::Approx(2.0 * gf.step).epsilon(1e-12));
}

TEST_CASE("oscillation vector csv") {
    const auto gf = sample_expr(expr::parse("x*y"), 2, kUnit, 5);
    const auto v = osc::osc_vector(gf, 1, 2);
    std::ostringstream out;
    osc::write_csv(v, out);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "# fisdim oscvector n=1 k=2");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.find(std::to_string(rows) + ",") == 0);
        ++rows;
    }
    CHECK(rows == 4);
}
