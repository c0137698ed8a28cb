#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace fisdim;
using testutil::random_expr;

TEST_CASE("parse builds the expected structure") {
    const auto e = expr::parse("0.3 + 0.2*x*y");
    REQUIRE(e->kind == expr::Expr::Kind::Bin);
    CHECK(e->op == expr::BinOp::Add);
    CHECK(e->args[0]->kind == expr::Expr::Kind::Number);
    CHECK(e->args[0]->number == 0.3);
    const auto& mul = *e->args[1];
    REQUIRE(mul.kind == expr::Expr::Kind::Bin);
    CHECK(mul.op == expr::BinOp::Mul);
    CHECK(mul.args[1]->kind == expr::Expr::Kind::VarY);  // ((0.2*x)*y)
    const auto& inner = *mul.args[0];
    CHECK(inner.op == expr::BinOp::Mul);
    CHECK(inner.args[1]->kind == expr::Expr::Kind::VarX);
}

TEST_CASE("power is right-associative") {
    const auto e = expr::parse("2^3^2");
    REQUIRE(e->op == expr::BinOp::Pow);
    CHECK(e->args[0]->number == 2.0);
    CHECK(e->args[1]->op == expr::BinOp::Pow);
    CHECK(expr::eval(e, 0, 0) == 512.0);
}

TEST_CASE("syntax errors carry offsets and expectations") {
    try {
        expr::parse("sin(x");
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        CHECK(err.offset == 5);
        CHECK(err.expected == "\")\"");
    }
    CHECK_THROWS_AS(expr::parse("1 + "), ParseError);
    CHECK_THROWS_AS(expr::parse("min(x)"), ParseError);
    CHECK_THROWS_AS(expr::parse("foo(1)"), ParseError);
    CHECK_THROWS_AS(expr::parse("1 2"), ParseError);
}

TEST_CASE("eval basics") {
    CHECK(expr::eval(expr::parse("2^3"), 0, 0) == 8.0);
    CHECK(expr::eval(expr::parse("x*y"), 0.5, 0.25) == 0.125);
    CHECK(expr::eval(expr::parse("abs(x-1)"), 0.25, 0) == 0.75);
    CHECK(expr::eval(expr::parse("min(x, y) + max(x, y)"), 0.25, 2.0) == 2.25);
    CHECK(expr::eval(expr::parse("-x^2"), 3, 0) == -9.0);  // ^ binds tighter than unary minus
}

TEST_CASE("eval domain errors are raised, not silent NaN") {
    CHECK_THROWS_AS(expr::eval(expr::parse("1/x"), 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(expr::eval(expr::parse("sqrt(x-2)"), 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(expr::eval(expr::parse("(-2)^0.5"), 0.0, 0.0), DomainError);
}

TEST_CASE("interval evaluation basics") {
    const Rect box{{0, 1}, {0, 1}};
    const Interval ix = expr::eval_interval(expr::parse("x"), box);
    CHECK(ix.lo <= 0.0);
    CHECK(ix.hi >= 1.0);
    CHECK(ix.width() <= 1.0 + 1e-12);

    const Interval id = expr::eval_interval(expr::parse("x - x"), box);
    CHECK(id.contains(0.0));
    CHECK(id.width() <= 2.0 + 1e-12);  // dependency loss allowed

    const Interval ic = expr::eval_interval(expr::parse("0.6"), box);
    CHECK(ic.lo == doctest::Approx(0.6));
    CHECK(ic.hi == doctest::Approx(0.6));
}

TEST_CASE("enclosure soundness over an expression corpus") {
    const char* corpus[] = {
        "x", "y", "x+y", "x-y", "x*y", "0.5*x*y - y", "x^2", "x^3 + y^2", "sin(x)",
        "cos(x*y)", "exp(-x)", "abs(x-0.5)", "min(x, y)", "max(x*y, 0.3)",
        "sqrt(x + 1)", "1/(x + 2)", "0.5+0.4*sin(3*(x+y))", "x^2*y - y^2*x",
        "exp(x)*cos(y)", "(x + y)^2 / (2 + x)", "2^x", "abs(sin(5*x)) + y",
    };
    const Rect box{{0, 1}, {0, 1}};
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* text : corpus) {
        const auto e = expr::parse(text);
        const Interval range = expr::eval_interval(e, box);
        for (int i = 0; i < 1000; ++i) {
            const double px = u(rng), py = u(rng);
            const double v = expr::eval(e, px, py);
            CAPTURE(text);
            CHECK(range.contains(v));
        }
    }
}

TEST_CASE("quadrant refinement never widens the enclosure") {
    const char* corpus[] = {"x*y - y^2", "sin(3*x) * cos(2*y)", "exp(x - y)", "abs(x - 0.5) + y"};
    const Rect box{{0, 1}, {0, 1}};
    for (const char* text : corpus) {
        const auto e = expr::parse(text);
        const Interval parent = expr::eval_interval(e, box);
        Interval hull{1e300, -1e300};
        for (int qx = 0; qx < 2; ++qx) {
            for (int qy = 0; qy < 2; ++qy) {
                const Rect q{{0.5 * qx, 0.5 * (qx + 1)}, {0.5 * qy, 0.5 * (qy + 1)}};
                hull = interval::hull(hull, expr::eval_interval(e, q));
            }
        }
        CAPTURE(text);
        CHECK(parent.lo <= hull.lo + 1e-12);
        CHECK(parent.hi >= hull.hi - 1e-12);
    }
}

TEST_CASE("parse(print(e)) round-trips structurally") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto e = random_expr(rng, 8);
        const auto back = expr::parse(expr::print(e));
        CHECK(expr::equal(e, back));
    }
}

TEST_CASE("lipschitz estimates") {
    const Rect box{{0, 1}, {0, 1}};
    CHECK(expr::lipschitz_estimate(expr::parse("x"), box, 16) == doctest::Approx(1.25));
    CHECK(expr::lipschitz_estimate(expr::parse("0.6"), box, 16) == 0.0);

    // oracle: max |grad(xy)| on the box is sqrt(2), attained at (1,1);
    // confirm by dense sampling
    const auto e = expr::parse("x*y");
    double dense = 0.0;
    for (int r = 0; r <= 400; ++r)
        for (int c = 0; c <= 400; ++c)
            dense = std::max(dense, std::hypot(r / 400.0, c / 400.0));
    CHECK(dense == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    const double est = expr::lipschitz_estimate(e, box, 64);
    CHECK(est == doctest::Approx(1.25 * std::sqrt(2.0)).epsilon(0.05));
}
