#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <qtheta/expr.hpp>
#include <qtheta/qseries.hpp>

namespace qtheta {

enum class Mode { series, expansion, numeric };

std::string to_string(Mode m);

using Bindings = std::vector<std::pair<std::string, ExprPtr>>;

/// One identity document: named bindings plus relations asserted to vanish.
struct IdentityDoc {
    std::string id;
    std::string label;
    std::string category;
    Mode mode = Mode::series;
    std::optional<std::int64_t> order;
    std::optional<std::int64_t> lead;
    std::optional<std::vector<Integer>> golden;
    std::vector<std::string> params;
    std::vector<std::pair<std::string, std::string>> attrs;
    Bindings bindings;
    std::vector<ExprPtr> relations;

    const std::string *attr(std::string_view key) const;
    /// The single relation of series and expansion documents.
    const ExprPtr &relation() const;
};

bool operator==(const IdentityDoc &a, const IdentityDoc &b);
inline bool operator!=(const IdentityDoc &a, const IdentityDoc &b) { return !(a == b); }

/// Parses one document. Throws syntax_error, unknown_name_error,
/// duplicate_binding_error.
IdentityDoc parse(std::string_view text);

/// Canonical text; parse(print(d)) == d.
std::string print(const IdentityDoc &doc);

constexpr std::int64_t default_order = 40;

/// Evaluates e to a series exact below exponent `order`, raising the order
/// of the underlying theta series as far as needed. Throws
/// beyond_validity_error if that fails.
QSeries eval_expr(const ExprPtr &e, const Bindings &bindings, std::int64_t order);

/// Evaluates every binding and the given expressions with all theta atoms
/// expanded to `atom_order`, sharing intermediate results.
class SeriesEvaluator {
public:
    SeriesEvaluator(const Bindings &bindings, std::int64_t atom_order);

    QSeries eval(const ExprPtr &e);
    std::int64_t atom_order() const noexcept { return atom_order_; }

private:
    QSeries eval_uncached(const ExprPtr &e);
    QSeries bounded(const QSeries &s) const;

    const Bindings &bindings_;
    std::int64_t atom_order_;
    std::map<const Expr *, QSeries> node_cache_;
    std::map<std::string, QSeries> named_cache_;
};

enum class Status { verified, failed, error };

std::string to_string(Status s);

struct Discrepancy {
    Rational exponent;
    Rational coefficient;
};

struct VerificationReport {
    Status status = Status::error;
    /// q-units checked beyond the reference exponent (largest summand
    /// valuation); never less than what was requested when verified.
    std::int64_t order_checked = 0;
    Rational reference_exponent = 0;
    std::optional<Discrepancy> first_discrepancy;
    std::string message;
};

/// Checks that every relation of a series document vanishes through
/// `order` q-units past its largest summand valuation.
VerificationReport verify(const IdentityDoc &doc, std::int64_t order);

struct Expansion {
    Rational lead;
    std::vector<Rational> coeffs;
};

/// First `terms` coefficients of the relation at integer steps from its
/// leading exponent (the document's `lead` when present).
Expansion expand(const IdentityDoc &doc, std::size_t terms);

/// Compares expand() against the golden list.
VerificationReport check_expansion(const IdentityDoc &doc);

} // namespace qtheta
