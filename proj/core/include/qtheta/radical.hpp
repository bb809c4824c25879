#pragma once

#include <memory>
#include <string>
#include <string_view>

#include <qtheta/bigreal.hpp>
#include <qtheta/rational.hpp>

namespace qtheta {

/// Closed-form real built from rationals with + - * / and sqrt.
struct RadicalExpr {
    enum class Kind { number, add, sub, mul, div, neg, sqrt };

    Kind kind = Kind::number;
    Rational value;
    std::shared_ptr<const RadicalExpr> lhs;
    std::shared_ptr<const RadicalExpr> rhs;
};

using RadicalPtr = std::shared_ptr<const RadicalExpr>;

/// Grammar: sums and products of integers, "a/b", parentheses and
/// sqrt(...). Throws syntax_error.
RadicalPtr parse_radical(std::string_view text);

std::string to_string(const RadicalPtr &r);

/// Evaluates at `bits` of binary precision. Throws negative_radicand_error
/// when a square root argument is negative.
BigReal eval_radical(const RadicalPtr &r, mpfr_prec_t bits);

} // namespace qtheta
