#include <qtheta/radical.hpp>

#include <cctype>

#include <qtheta/errors.hpp>

namespace qtheta {

namespace {

RadicalPtr node(RadicalExpr::Kind k, RadicalPtr l, RadicalPtr r = nullptr)
{
    auto e = std::make_shared<RadicalExpr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

class RadicalParser {
public:
    explicit RadicalParser(std::string_view s) : s_(s) {}

    RadicalPtr parse()
    {
        RadicalPtr e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw syntax_error(what, 1, static_cast<int>(pos_) + 1);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RadicalPtr sum()
    {
        RadicalPtr e = product();
        for (;;) {
            if (eat('+')) e = node(RadicalExpr::Kind::add, e, product());
            else if (eat('-')) e = node(RadicalExpr::Kind::sub, e, product());
            else return e;
        }
    }

    RadicalPtr product()
    {
        RadicalPtr e = unary();
        for (;;) {
            if (eat('*')) e = node(RadicalExpr::Kind::mul, e, unary());
            else if (eat('/')) e = node(RadicalExpr::Kind::div, e, unary());
            else return e;
        }
    }

    RadicalPtr unary()
    {
        if (eat('-')) return node(RadicalExpr::Kind::neg, unary());
        if (eat('+')) return unary();
        return primary();
    }

    RadicalPtr primary()
    {
        skip();
        if (eat('(')) {
            RadicalPtr e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (s_.substr(pos_, 4) == "sqrt") {
            pos_ += 4;
            if (!eat('(')) fail("expected '(' after sqrt");
            RadicalPtr e = sum();
            if (!eat(')')) fail("expected ')'");
            return node(RadicalExpr::Kind::sqrt, e);
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
        auto e = std::make_shared<RadicalExpr>();
        e->value = Rational(std::string(s_.substr(start, pos_ - start)));
        return e;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

int precedence(const RadicalPtr &r)
{
    switch (r->kind) {
    case RadicalExpr::Kind::add:
    case RadicalExpr::Kind::sub:
        return 1;
    case RadicalExpr::Kind::mul:
    case RadicalExpr::Kind::div:
        return 2;
    case RadicalExpr::Kind::neg:
        return 3;
    case RadicalExpr::Kind::number:
        return sgn(r->value) < 0 || !is_integer(r->value) ? 2 : 4;
    case RadicalExpr::Kind::sqrt:
        return 4;
    }
    return 4;
}

std::string wrap(const RadicalPtr &r, int need)
{
    std::string s = to_string(r);
    return precedence(r) < need ? "(" + s + ")" : s;
}

} // namespace

RadicalPtr parse_radical(std::string_view text) { return RadicalParser(text).parse(); }

std::string to_string(const RadicalPtr &r)
{
    using K = RadicalExpr::Kind;
    switch (r->kind) {
    case K::number:
        return qtheta::to_string(r->value);
    case K::add:
        return wrap(r->lhs, 1) + " + " + wrap(r->rhs, 2);
    case K::sub:
        return wrap(r->lhs, 1) + " - " + wrap(r->rhs, 2);
    case K::mul:
        return wrap(r->lhs, 2) + "*" + wrap(r->rhs, 3);
    case K::div:
        return wrap(r->lhs, 2) + "/" + wrap(r->rhs, 3);
    case K::neg:
        return "-" + wrap(r->lhs, 3);
    case K::sqrt:
        return "sqrt(" + to_string(r->lhs) + ")";
    }
    return {};
}

BigReal eval_radical(const RadicalPtr &r, mpfr_prec_t bits)
{
    using K = RadicalExpr::Kind;
    switch (r->kind) {
    case K::number:
        return BigReal(r->value, bits);
    case K::add:
        return eval_radical(r->lhs, bits) + eval_radical(r->rhs, bits);
    case K::sub:
        return eval_radical(r->lhs, bits) - eval_radical(r->rhs, bits);
    case K::mul:
        return eval_radical(r->lhs, bits) * eval_radical(r->rhs, bits);
    case K::div:
        return eval_radical(r->lhs, bits) / eval_radical(r->rhs, bits);
    case K::neg:
        return -eval_radical(r->lhs, bits);
    case K::sqrt: {
        BigReal a = eval_radical(r->lhs, bits);
        if (a.sign() < 0) {
            throw negative_radicand_error("sqrt of negative value " + a.to_string(12) + " in " + to_string(r));
        }
        return sqrt(a);
    }
    }
    throw std::logic_error("unknown radical kind");
}

} // namespace qtheta
