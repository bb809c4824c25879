#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <qtheta/rational.hpp>
#include <qtheta/theta_series.hpp>

namespace qtheta {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression tree of the identity language.
struct Expr {
    enum class Kind { constant, atom, name, add, sub, mul, div, pow, neg };

    Kind kind = Kind::constant;
    Rational value;           // constant
    ThetaAtom atom;           // atom
    std::string name;         // name
    ExprPtr lhs, rhs;         // binary ops; lhs is the operand of pow and neg
    std::int64_t exponent = 0; // pow

    static ExprPtr constant(const Rational &v);
    static ExprPtr make_atom(const ThetaAtom &a);
    static ExprPtr make_name(std::string n);
    static ExprPtr binary(Kind k, ExprPtr l, ExprPtr r);
    static ExprPtr power(ExprPtr base, std::int64_t e);
    static ExprPtr negate(ExprPtr e);
};

/// Canonical spelling with minimal parentheses; parses back to an equal tree.
std::string to_string(const ExprPtr &e);

bool equal(const ExprPtr &a, const ExprPtr &b);

/// Names referenced anywhere in e, in first-occurrence order.
std::vector<std::string> referenced_names(const ExprPtr &e);

/// Splits a tree of top-level + and - into its summands (signs dropped).
std::vector<ExprPtr> top_level_summands(const ExprPtr &e);

} // namespace qtheta
