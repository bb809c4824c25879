#include <qtheta/expr.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qtheta {

ExprPtr Expr::constant(const Rational &v)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::constant;
    e->value = v;
    return e;
}

ExprPtr Expr::make_atom(const ThetaAtom &a)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::atom;
    e->atom = a;
    return e;
}

ExprPtr Expr::make_name(std::string n)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::name;
    e->name = std::move(n);
    return e;
}

ExprPtr Expr::binary(Kind k, ExprPtr l, ExprPtr r)
{
    if (k != Kind::add && k != Kind::sub && k != Kind::mul && k != Kind::div) {
        throw std::invalid_argument("not a binary operator");
    }
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr Expr::power(ExprPtr base, std::int64_t n)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::pow;
    e->lhs = std::move(base);
    e->exponent = n;
    return e;
}

ExprPtr Expr::negate(ExprPtr x)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::neg;
    e->lhs = std::move(x);
    return e;
}

namespace {

int precedence(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::neg:
        return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
        return 2;
    case Expr::Kind::pow:
        return 3;
    case Expr::Kind::constant:
        // a/b and negative constants only bind as tightly as a product
        if (!is_integer(e.value) || sgn(e.value) < 0) return 2;
        return 4;
    default:
        return 4;
    }
}

void print(const ExprPtr &e, int min_prec, std::string &out)
{
    bool wrap = precedence(*e) < min_prec;
    if (wrap) out += '(';
    switch (e->kind) {
    case Expr::Kind::constant:
        if (sgn(e->value) < 0) {
            out += "(-" + to_string(Rational(-e->value)) + ")";
        } else {
            out += to_string(e->value);
        }
        break;
    case Expr::Kind::atom:
        out += e->atom.to_string();
        break;
    case Expr::Kind::name:
        out += e->name;
        break;
    case Expr::Kind::add:
    case Expr::Kind::sub:
        print(e->lhs, 1, out);
        out += e->kind == Expr::Kind::add ? " + " : " - ";
        print(e->rhs, 2, out);
        break;
    case Expr::Kind::mul:
    case Expr::Kind::div:
        print(e->lhs, 2, out);
        out += e->kind == Expr::Kind::mul ? "*" : "/";
        print(e->rhs, 3, out);
        break;
    case Expr::Kind::pow:
        print(e->lhs, 4, out);
        out += "^" + std::to_string(e->exponent);
        break;
    case Expr::Kind::neg:
        out += "-";
        print(e->lhs, 2, out);
        break;
    }
    if (wrap) out += ')';
}

} // namespace

std::string to_string(const ExprPtr &e)
{
    std::string out;
    print(e, 0, out);
    return out;
}

bool equal(const ExprPtr &a, const ExprPtr &b)
{
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::constant:
        return a->value == b->value;
    case Expr::Kind::atom:
        return a->atom == b->atom;
    case Expr::Kind::name:
        return a->name == b->name;
    case Expr::Kind::pow:
        return a->exponent == b->exponent && equal(a->lhs, b->lhs);
    case Expr::Kind::neg:
        return equal(a->lhs, b->lhs);
    default:
        return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
}

std::vector<std::string> referenced_names(const ExprPtr &e)
{
    std::vector<std::string> out;
    std::function<void(const ExprPtr &)> walk = [&](const ExprPtr &x) {
        if (!x) return;
        if (x->kind == Expr::Kind::name) {
            if (std::find(out.begin(), out.end(), x->name) == out.end()) out.push_back(x->name);
            return;
        }
        walk(x->lhs);
        walk(x->rhs);
    };
    walk(e);
    return out;
}

std::vector<ExprPtr> top_level_summands(const ExprPtr &e)
{
    std::vector<ExprPtr> out;
    std::function<void(const ExprPtr &)> walk = [&](const ExprPtr &x) {
        switch (x->kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub:
            walk(x->lhs);
            walk(x->rhs);
            break;
        case Expr::Kind::neg:
            walk(x->lhs);
            break;
        default:
            out.push_back(x);
        }
    };
    walk(e);
    return out;
}

} // namespace qtheta
