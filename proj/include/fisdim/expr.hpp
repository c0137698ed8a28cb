#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fisdim/interval.hpp"

namespace fisdim::expr {

enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class Fun { Sin, Cos, Exp, Sqrt, Abs, Min, Max };

// Immutable AST over x, y. Shared subtrees are fine; nothing mutates a node
// after parse, so concurrent evaluation needs no locking.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, VarX, VarY, Neg, Bin, Call };

    Kind kind;
    double number = 0.0;           // Kind::Number
    BinOp op = BinOp::Add;         // Kind::Bin
    Fun fun = Fun::Sin;            // Kind::Call
    std::vector<ExprPtr> args;     // children

    static ExprPtr num(double v);
    static ExprPtr var_x();
    static ExprPtr var_y();
    static ExprPtr neg(ExprPtr a);
    static ExprPtr bin(BinOp op, ExprPtr a, ExprPtr b);
    static ExprPtr call(Fun f, std::vector<ExprPtr> args);
};

// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | atom ("^" factor)?
//   atom   := number | "x" | "y" | ident "(" expr ("," expr)* ")" | "(" expr ")"
// "^" is right-associative and binds tighter than unary minus.
ExprPtr parse(std::string_view text);

std::string print(const Expr& e);
inline std::string print(const ExprPtr& e) { return print(*e); }

bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b) { return equal(*a, *b); }

double eval(const Expr& e, double x, double y);
inline double eval(const ExprPtr& e, double x, double y) { return eval(*e, x, y); }

// Natural interval extension; the result encloses the true range of e on box.
Interval eval_interval(const Expr& e, const Rect& box);
inline Interval eval_interval(const ExprPtr& e, const Rect& box) { return eval_interval(*e, box); }

// Heuristic upper estimate of the Lipschitz constant on box: max sampled
// gradient magnitude (central differences on a grid x grid lattice) times a
// 1.25 safety factor. Not certified.
double lipschitz_estimate(const Expr& e, const Rect& box, int grid);
inline double lipschitz_estimate(const ExprPtr& e, const Rect& box, int grid) {
    return lipschitz_estimate(*e, box, grid);
}

// Same sampled-gradient estimator for an arbitrary callable; used for the
// piecewise function q which is not itself an AST.
double lipschitz_estimate_fn(const std::function<double(double, double)>& f, const Rect& box,
                             int grid);

}  // namespace fisdim::expr
