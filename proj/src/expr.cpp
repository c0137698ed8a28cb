#include "fisdim/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

namespace fisdim::expr {

ExprPtr Expr::num(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->number = v;
    return e;
}

ExprPtr Expr::var_x() {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::VarX;
    return e;
}

ExprPtr Expr::var_y() {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::VarY;
    return e;
}

ExprPtr Expr::neg(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Neg;
    e->args = {std::move(a)};
    return e;
}

ExprPtr Expr::bin(BinOp op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Bin;
    e->op = op;
    e->args = {std::move(a), std::move(b)};
    return e;
}

ExprPtr Expr::call(Fun f, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call;
    e->fun = f;
    e->args = std::move(args);
    return e;
}

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& expected) { throw ParseError(pos, expected); }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (true) {
            if (eat('+'))
                lhs = Expr::bin(BinOp::Add, lhs, parse_term());
            else if (eat('-'))
                lhs = Expr::bin(BinOp::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (true) {
            if (eat('*'))
                lhs = Expr::bin(BinOp::Mul, lhs, parse_factor());
            else if (eat('/'))
                lhs = Expr::bin(BinOp::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    ExprPtr parse_factor() {
        if (eat('-')) return Expr::neg(parse_factor());
        ExprPtr base = parse_atom();
        if (eat('^')) return Expr::bin(BinOp::Pow, base, parse_factor());
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("operand");
        const char c = text[pos];
        if (c == '(') {
            ++pos;
            ExprPtr inner = parse_expr();
            if (!eat(')')) fail("\")\"");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        fail("operand");
    }

    ExprPtr parse_number() {
        const char* begin = text.data() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("number");
        pos += static_cast<std::size_t>(end - begin);
        return Expr::num(v);
    }

    ExprPtr parse_ident() {
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        const std::string_view name = text.substr(start, pos - start);
        if (name == "x") return Expr::var_x();
        if (name == "y") return Expr::var_y();

        std::optional<Fun> fun;
        std::size_t arity = 1;
        if (name == "sin") fun = Fun::Sin;
        else if (name == "cos") fun = Fun::Cos;
        else if (name == "exp") fun = Fun::Exp;
        else if (name == "sqrt") fun = Fun::Sqrt;
        else if (name == "abs") fun = Fun::Abs;
        else if (name == "min") { fun = Fun::Min; arity = 2; }
        else if (name == "max") { fun = Fun::Max; arity = 2; }
        if (!fun) {
            pos = start;
            fail("known function or variable");
        }
        if (!eat('(')) fail("\"(\"");
        std::vector<ExprPtr> args;
        args.push_back(parse_expr());
        while (eat(',')) args.push_back(parse_expr());
        if (!eat(')')) fail("\")\"");
        if (args.size() != arity)
            throw ParseError(start, std::string(name) + " with " + std::to_string(arity) +
                                        " argument(s)");
        return Expr::call(*fun, std::move(args));
    }
};

const char* fun_name(Fun f) {
    switch (f) {
        case Fun::Sin: return "sin";
        case Fun::Cos: return "cos";
        case Fun::Exp: return "exp";
        case Fun::Sqrt: return "sqrt";
        case Fun::Abs: return "abs";
        case Fun::Min: return "min";
        case Fun::Max: return "max";
    }
    return "?";
}

char op_char(BinOp op) {
    switch (op) {
        case BinOp::Add: return '+';
        case BinOp::Sub: return '-';
        case BinOp::Mul: return '*';
        case BinOp::Div: return '/';
        case BinOp::Pow: return '^';
    }
    return '?';
}

// If e is a literal nonnegative integer, return its value.
std::optional<long> literal_exponent(const Expr& e) {
    if (e.kind != Expr::Kind::Number) return std::nullopt;
    const double v = e.number;
    if (v < 0.0 || v != std::floor(v) || v > 1e9) return std::nullopt;
    return static_cast<long>(v);
}

}  // namespace

ExprPtr parse(std::string_view text) {
    Parser p{text};
    ExprPtr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("end of input");
    return e;
}

std::string print(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", e.number);
            return buf;
        }
        case Expr::Kind::VarX: return "x";
        case Expr::Kind::VarY: return "y";
        case Expr::Kind::Neg: return "(-" + print(*e.args[0]) + ")";
        case Expr::Kind::Bin:
            return "(" + print(*e.args[0]) + op_char(e.op) + print(*e.args[1]) + ")";
        case Expr::Kind::Call: {
            std::string s = fun_name(e.fun);
            s += '(';
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) s += ',';
                s += print(*e.args[i]);
            }
            s += ')';
            return s;
        }
    }
    return "?";
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Number: return a.number == b.number;
        case Expr::Kind::VarX:
        case Expr::Kind::VarY: return true;
        case Expr::Kind::Bin:
            if (a.op != b.op) return false;
            break;
        case Expr::Kind::Call:
            if (a.fun != b.fun) return false;
            break;
        case Expr::Kind::Neg: break;
    }
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal(*a.args[i], *b.args[i])) return false;
    return true;
}

double eval(const Expr& e, double x, double y) {
    switch (e.kind) {
        case Expr::Kind::Number: return e.number;
        case Expr::Kind::VarX: return x;
        case Expr::Kind::VarY: return y;
        case Expr::Kind::Neg: return -eval(*e.args[0], x, y);
        case Expr::Kind::Bin: {
            const double a = eval(*e.args[0], x, y);
            switch (e.op) {
                case BinOp::Add: return a + eval(*e.args[1], x, y);
                case BinOp::Sub: return a - eval(*e.args[1], x, y);
                case BinOp::Mul: return a * eval(*e.args[1], x, y);
                case BinOp::Div: {
                    const double b = eval(*e.args[1], x, y);
                    if (b == 0.0) throw DomainError("division by zero");
                    return a / b;
                }
                case BinOp::Pow: {
                    if (auto k = literal_exponent(*e.args[1]))
                        return std::pow(a, static_cast<double>(*k));
                    const double b = eval(*e.args[1], x, y);
                    if (a <= 0.0)
                        throw DomainError("power with non-positive base and non-integer exponent");
                    return std::pow(a, b);
                }
            }
            break;
        }
        case Expr::Kind::Call: {
            const double a = eval(*e.args[0], x, y);
            switch (e.fun) {
                case Fun::Sin: return std::sin(a);
                case Fun::Cos: return std::cos(a);
                case Fun::Exp: return std::exp(a);
                case Fun::Sqrt:
                    if (a < 0.0) throw DomainError("sqrt of negative value");
                    return std::sqrt(a);
                case Fun::Abs: return std::abs(a);
                case Fun::Min: return std::min(a, eval(*e.args[1], x, y));
                case Fun::Max: return std::max(a, eval(*e.args[1], x, y));
            }
            break;
        }
    }
    throw Error("unreachable expression node");
}

Interval eval_interval(const Expr& e, const Rect& box) {
    namespace iv = fisdim::interval;
    switch (e.kind) {
        case Expr::Kind::Number: return iv::point(e.number);
        case Expr::Kind::VarX: return box.x;
        case Expr::Kind::VarY: return box.y;
        case Expr::Kind::Neg: return iv::neg(eval_interval(*e.args[0], box));
        case Expr::Kind::Bin: {
            const Interval a = eval_interval(*e.args[0], box);
            switch (e.op) {
                case BinOp::Add: return iv::add(a, eval_interval(*e.args[1], box));
                case BinOp::Sub: return iv::sub(a, eval_interval(*e.args[1], box));
                case BinOp::Mul: return iv::mul(a, eval_interval(*e.args[1], box));
                case BinOp::Div: return iv::div(a, eval_interval(*e.args[1], box));
                case BinOp::Pow:
                    if (auto k = literal_exponent(*e.args[1])) return iv::pow_int(a, *k);
                    return iv::pow_real(a, eval_interval(*e.args[1], box));
            }
            break;
        }
        case Expr::Kind::Call: {
            const Interval a = eval_interval(*e.args[0], box);
            switch (e.fun) {
                case Fun::Sin: return iv::sin(a);
                case Fun::Cos: return iv::cos(a);
                case Fun::Exp: return iv::exp(a);
                case Fun::Sqrt: return iv::sqrt(a);
                case Fun::Abs: return iv::abs(a);
                case Fun::Min: return iv::min(a, eval_interval(*e.args[1], box));
                case Fun::Max: return iv::max(a, eval_interval(*e.args[1], box));
            }
            break;
        }
    }
    throw Error("unreachable expression node");
}

double lipschitz_estimate_fn(const std::function<double(double, double)>& f, const Rect& box,
                             int grid) {
    if (grid < 2) throw ValidationError("lipschitz_estimate requires grid >= 2");
    const double hx = box.x.width() / (grid - 1);
    const double hy = box.y.width() / (grid - 1);
    double worst = 0.0;
    for (int r = 0; r < grid; ++r) {
        const double y = box.y.lo + r * hy;
        for (int c = 0; c < grid; ++c) {
            const double x = box.x.lo + c * hx;
            // central differences, one-sided at the box edge
            const double xm = std::max(box.x.lo, x - hx), xp = std::min(box.x.hi, x + hx);
            const double ym = std::max(box.y.lo, y - hy), yp = std::min(box.y.hi, y + hy);
            const double dx = (f(xp, y) - f(xm, y)) / (xp - xm);
            const double dy = (f(x, yp) - f(x, ym)) / (yp - ym);
            worst = std::max(worst, std::hypot(dx, dy));
        }
    }
    return 1.25 * worst;
}

double lipschitz_estimate(const Expr& e, const Rect& box, int grid) {
    return lipschitz_estimate_fn([&e](double x, double y) { return eval(e, x, y); }, box, grid);
}

}  // namespace fisdim::expr
