#include <qtheta/identity.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include <qtheta/errors.hpp>

namespace qtheta {

std::string to_string(Mode m)
{
    switch (m) {
    case Mode::series:
        return "series";
    case Mode::expansion:
        return "expansion";
    case Mode::numeric:
        return "numeric";
    }
    return {};
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::verified:
        return "verified";
    case Status::failed:
        return "failed";
    case Status::error:
        return "error";
    }
    return {};
}

const std::string *IdentityDoc::attr(std::string_view key) const
{
    for (const auto &[k, v] : attrs) {
        if (k == key) return &v;
    }
    return nullptr;
}

const ExprPtr &IdentityDoc::relation() const
{
    if (relations.size() != 1) throw std::logic_error("document " + id + " has several relations");
    return relations.front();
}

bool operator==(const IdentityDoc &a, const IdentityDoc &b)
{
    if (a.id != b.id || a.label != b.label || a.category != b.category || a.mode != b.mode ||
        a.order != b.order || a.lead != b.lead || a.golden != b.golden || a.params != b.params ||
        a.attrs != b.attrs || a.bindings.size() != b.bindings.size() ||
        a.relations.size() != b.relations.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.bindings.size(); ++i) {
        if (a.bindings[i].first != b.bindings[i].first ||
            !equal(a.bindings[i].second, b.bindings[i].second)) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.relations.size(); ++i) {
        if (!equal(a.relations[i], b.relations[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

struct Token {
    enum class Kind { ident, integer, string, punct, end };
    Kind kind = Kind::end;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Token::Kind::ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Token::Kind::integer;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != '"') throw syntax_error("unterminated string", line, col);
            t.kind = Token::Kind::string;
            t.text = std::string(src.substr(i + 1, j - i - 1));
            advance(j - i + 1);
        } else if (std::string_view("{}()[],=+-*/^").find(c) != std::string_view::npos) {
            t.kind = Token::Kind::punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw syntax_error(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

const std::set<std::string> &reserved()
{
    static const std::set<std::string> words = {"identity", "let",   "assert", "q",     "phi",
                                                "psi",      "f",     "order",  "mode",  "golden",
                                                "lead",     "label", "category", "param", "attr"};
    return words;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    IdentityDoc document()
    {
        expect_word("identity");
        doc_.id = expect(Token::Kind::string, "identity name").text;
        expect_punct("{");
        metas();
        while (is_word("let")) binding();
        if (!is_word("assert")) fail("expected 'let' or 'assert'");
        while (is_word("assert")) relation();
        const Token &close = peek();
        expect_punct("}");
        if (peek().kind != Token::Kind::end) fail("text after the closing brace");
        if (doc_.mode == Mode::expansion && !doc_.golden) {
            throw syntax_error("expansion mode requires a golden list", close.line, close.col);
        }
        if (doc_.mode == Mode::expansion && doc_.relations.size() != 1) {
            throw syntax_error("expansion documents take exactly one assert", close.line, close.col);
        }
        return std::move(doc_);
    }

private:
    const Token &peek(std::size_t ahead = 0) const
    {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token &next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string &what) const
    {
        const Token &t = peek();
        std::string near = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
        throw syntax_error(what + " near " + near, t.line, t.col);
    }

    bool is_word(std::string_view w) const
    {
        return peek().kind == Token::Kind::ident && peek().text == w;
    }
    bool is_punct(std::string_view p) const
    {
        return peek().kind == Token::Kind::punct && peek().text == p;
    }
    void expect_word(std::string_view w)
    {
        if (!is_word(w)) fail("expected '" + std::string(w) + "'");
        next();
    }
    void expect_punct(std::string_view p)
    {
        if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
        next();
    }
    const Token &expect(Token::Kind k, const std::string &what)
    {
        if (peek().kind != k) fail("expected " + what);
        return next();
    }

    std::int64_t integer()
    {
        const Token &t = expect(Token::Kind::integer, "integer");
        try {
            return std::stoll(t.text);
        } catch (const std::exception &) {
            throw syntax_error("integer out of range", t.line, t.col);
        }
    }
    std::int64_t signed_integer()
    {
        bool neg = false;
        if (is_punct("-")) {
            next();
            neg = true;
        }
        std::int64_t v = integer();
        return neg ? -v : v;
    }
    Integer big_signed_integer()
    {
        bool neg = false;
        if (is_punct("-")) {
            next();
            neg = true;
        }
        Integer v(expect(Token::Kind::integer, "integer").text);
        return neg ? Integer(-v) : v;
    }

    std::string new_name()
    {
        const Token &t = peek();
        if (t.kind != Token::Kind::ident) fail("expected a name");
        if (reserved().count(t.text)) fail("'" + t.text + "' is reserved");
        if (declared_.count(t.text)) {
            throw duplicate_binding_error("name '" + t.text + "' declared twice (line " +
                                          std::to_string(t.line) + ")");
        }
        next();
        return t.text;
    }

    void metas()
    {
        std::set<std::string> seen;
        while (peek().kind == Token::Kind::ident) {
            const Token &t = peek();
            const std::string w = t.text;
            if (w == "let" || w == "assert") return;
            if (w != "param" && w != "attr" && !seen.insert(w).second) fail("repeated '" + w + "'");
            next();
            if (w == "order") {
                doc_.order = integer();
            } else if (w == "lead") {
                doc_.lead = signed_integer();
            } else if (w == "mode") {
                const Token &m = expect(Token::Kind::ident, "mode name");
                if (m.text == "series") {
                    doc_.mode = Mode::series;
                } else if (m.text == "expansion") {
                    doc_.mode = Mode::expansion;
                } else if (m.text == "numeric") {
                    doc_.mode = Mode::numeric;
                } else {
                    throw syntax_error("unknown mode '" + m.text + "'", m.line, m.col);
                }
            } else if (w == "golden") {
                expect_punct("[");
                std::vector<Integer> g;
                g.push_back(big_signed_integer());
                while (is_punct(",")) {
                    next();
                    g.push_back(big_signed_integer());
                }
                expect_punct("]");
                doc_.golden = std::move(g);
            } else if (w == "label") {
                doc_.label = expect(Token::Kind::string, "label string").text;
            } else if (w == "category") {
                doc_.category = expect(Token::Kind::string, "category string").text;
            } else if (w == "param") {
                std::string n = new_name();
                declared_.insert(n);
                doc_.params.push_back(n);
            } else if (w == "attr") {
                std::string key = expect(Token::Kind::ident, "attribute key").text;
                if (doc_.attr(key)) fail("repeated attribute '" + key + "'");
                doc_.attrs.emplace_back(key, expect(Token::Kind::string, "attribute value").text);
            } else {
                throw syntax_error("unknown keyword '" + w + "'", t.line, t.col);
            }
        }
    }

    void binding()
    {
        expect_word("let");
        std::string n = new_name();
        expect_punct("=");
        ExprPtr e = expr();
        declared_.insert(n);
        doc_.bindings.emplace_back(n, e);
    }

    void relation()
    {
        expect_word("assert");
        ExprPtr e = expr();
        expect_punct("=");
        const Token &z = peek();
        if (z.kind != Token::Kind::integer || z.text != "0") fail("relations must read 'expr = 0'");
        next();
        doc_.relations.push_back(e);
    }

    ExprPtr expr()
    {
        bool neg = false;
        if (is_punct("-")) {
            next();
            neg = true;
        }
        ExprPtr e = term();
        if (neg) e = Expr::negate(e);
        while (is_punct("+") || is_punct("-")) {
            auto k = next().text == "+" ? Expr::Kind::add : Expr::Kind::sub;
            e = Expr::binary(k, e, term());
        }
        return e;
    }

    ExprPtr term()
    {
        ExprPtr e = factor();
        while (is_punct("*") || is_punct("/")) {
            auto k = next().text == "*" ? Expr::Kind::mul : Expr::Kind::div;
            e = Expr::binary(k, e, factor());
        }
        return e;
    }

    ExprPtr factor()
    {
        ExprPtr b = base();
        if (is_punct("^")) {
            next();
            b = Expr::power(b, signed_integer());
        }
        return b;
    }

    // "^" INT | "^" "-" INT | "^" "(" ["-"] INT ["/" INT] ")"
    Rational exponent_suffix()
    {
        if (!is_punct("^")) return 1;
        next();
        if (is_punct("(")) {
            next();
            std::int64_t n = signed_integer();
            std::int64_t d = 1;
            if (is_punct("/")) {
                next();
                const Token &dt = peek();
                d = integer();
                if (d == 0) throw syntax_error("zero denominator", dt.line, dt.col);
            }
            expect_punct(")");
            Rational r(n, d);
            r.canonicalize();
            return r;
        }
        return signed_integer();
    }

    // ["-"] "q" exponent_suffix
    Monomial argument()
    {
        Monomial m;
        if (is_punct("-")) {
            next();
            m.sign = -1;
        }
        expect_word("q");
        m.exponent = exponent_suffix();
        return m;
    }

    std::int64_t positive_power(const Monomial &m, const Token &at)
    {
        if (!is_integer(m.exponent) || sgn(m.exponent) <= 0) {
            throw syntax_error("argument power must be a positive integer (at least 1)", at.line, at.col);
        }
        return to_int64(m.exponent);
    }

    ExprPtr base()
    {
        const Token &t = peek();
        if (t.kind == Token::Kind::integer) {
            next();
            return Expr::constant(Rational(Integer(t.text)));
        }
        if (is_punct("(")) {
            next();
            ExprPtr e = expr();
            expect_punct(")");
            return e;
        }
        if (t.kind != Token::Kind::ident) fail("expected an expression");
        const std::string w = t.text;
        if ((w == "phi" || w == "psi" || w == "f") && peek(1).kind == Token::Kind::punct &&
            peek(1).text == "(") {
            next();
            next();
            const Token &at = peek();
            Monomial a = argument();
            if (w == "f" && is_punct(",")) {
                next();
                Monomial b = argument();
                expect_punct(")");
                return Expr::make_atom(ThetaAtom::fab(a, b));
            }
            std::int64_t k = positive_power(a, at);
            expect_punct(")");
            if (w == "phi") return Expr::make_atom(ThetaAtom::phi(a.sign, k));
            if (w == "psi") return Expr::make_atom(ThetaAtom::psi(a.sign, k));
            if (a.sign < 0) return Expr::make_atom(ThetaAtom::fneg(k));
            // f(u) at a positive argument is f(u, -u^2).
            return Expr::make_atom(ThetaAtom::fab({1, k}, {-1, 2 * k}));
        }
        if (w == "q") {
            next();
            return Expr::make_atom(ThetaAtom::monomial(exponent_suffix()));
        }
        if (reserved().count(w)) fail("unexpected keyword '" + w + "'");
        if (!declared_.count(w)) {
            throw unknown_name_error("unknown name '" + w + "' at " + std::to_string(t.line) + ":" +
                                     std::to_string(t.col));
        }
        next();
        return Expr::make_name(w);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    IdentityDoc doc_;
    std::set<std::string> declared_;
};

} // namespace

IdentityDoc parse(std::string_view text) { return Parser(text).document(); }

std::string print(const IdentityDoc &doc)
{
    std::ostringstream os;
    os << "identity \"" << doc.id << "\" {\n";
    if (!doc.label.empty()) os << "  label \"" << doc.label << "\"\n";
    if (!doc.category.empty()) os << "  category \"" << doc.category << "\"\n";
    os << "  mode " << to_string(doc.mode) << "\n";
    if (doc.order) os << "  order " << *doc.order << "\n";
    if (doc.lead) os << "  lead " << *doc.lead << "\n";
    if (doc.golden) {
        os << "  golden [";
        for (std::size_t i = 0; i < doc.golden->size(); ++i) os << (i ? ", " : "") << (*doc.golden)[i].get_str();
        os << "]\n";
    }
    for (const auto &p : doc.params) os << "  param " << p << "\n";
    for (const auto &[k, v] : doc.attrs) os << "  attr " << k << " \"" << v << "\"\n";
    for (const auto &[n, e] : doc.bindings) os << "  let " << n << " = " << to_string(e) << "\n";
    for (const auto &r : doc.relations) os << "  assert " << to_string(r) << " = 0\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

SeriesEvaluator::SeriesEvaluator(const Bindings &bindings, std::int64_t atom_order)
    : bindings_(bindings), atom_order_(atom_order)
{
}

QSeries SeriesEvaluator::bounded(const QSeries &s) const
{
    if (s.is_exact() && !s.is_monomial() && !s.is_zero()) return s.truncate(atom_order_);
    return s;
}

QSeries SeriesEvaluator::eval(const ExprPtr &e)
{
    if (auto it = node_cache_.find(e.get()); it != node_cache_.end()) return it->second;
    std::string key;
    if (e->kind == Expr::Kind::atom) {
        key = "@" + e->atom.to_string();
    } else if (e->kind == Expr::Kind::name) {
        key = "$" + e->name;
    } else if (e->kind == Expr::Kind::pow &&
               (e->lhs->kind == Expr::Kind::name || e->lhs->kind == Expr::Kind::atom)) {
        key = "^" + to_string(e);
    }
    if (!key.empty()) {
        if (auto it = named_cache_.find(key); it != named_cache_.end()) {
            node_cache_.emplace(e.get(), it->second);
            return it->second;
        }
    }
    QSeries s = eval_uncached(e);
    node_cache_.emplace(e.get(), s);
    if (!key.empty()) named_cache_.emplace(key, s);
    return s;
}

QSeries SeriesEvaluator::eval_uncached(const ExprPtr &e)
{
    switch (e->kind) {
    case Expr::Kind::constant:
        return QSeries::constant(e->value);
    case Expr::Kind::atom:
        return atom_series(e->atom, atom_order_);
    case Expr::Kind::name:
        for (const auto &[n, body] : bindings_) {
            if (n == e->name) return eval(body);
        }
        throw unknown_name_error("unknown name '" + e->name + "'");
    case Expr::Kind::add:
        return eval(e->lhs) + eval(e->rhs);
    case Expr::Kind::sub:
        return eval(e->lhs) - eval(e->rhs);
    case Expr::Kind::mul:
        return eval(e->lhs) * eval(e->rhs);
    case Expr::Kind::div: {
        QSeries d = bounded(eval(e->rhs));
        if (d.is_zero()) throw zero_series_error("division by a series that vanishes: " + to_string(e->rhs));
        if (d.is_exact() && d.min_exp() == 0) return eval(e->lhs).scaled(1 / d.leading());
        return eval(e->lhs) * invert(d);
    }
    case Expr::Kind::pow: {
        QSeries b = eval(e->lhs);
        if (e->exponent < 0) {
            b = bounded(b);
            if (b.is_zero()) throw zero_series_error("negative power of a vanishing series: " + to_string(e->lhs));
        }
        return int_pow(b, e->exponent);
    }
    case Expr::Kind::neg:
        return -eval(e->lhs);
    }
    throw std::logic_error("unknown expression kind");
}

namespace {

constexpr int max_rounds = 12;

std::int64_t ceil_int(const Rational &r)
{
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return to_int64(c);
}

} // namespace

QSeries eval_expr(const ExprPtr &e, const Bindings &bindings, std::int64_t order)
{
    std::int64_t atom_order = std::max<std::int64_t>(order, 0) + 8;
    for (int round = 0; round < max_rounds; ++round) {
        SeriesEvaluator ev(bindings, atom_order);
        QSeries s = ev.eval(e);
        if (s.is_exact() || s.validity() >= order) return s;
        atom_order += ceil_int(Rational(order) - s.validity()) + 4;
    }
    throw beyond_validity_error("could not reach order " + std::to_string(order) + " for " + to_string(e));
}

namespace {

struct RelationCheck {
    bool ok = true;
    std::int64_t checked = 0;
    Rational reference = 0;
    std::optional<Discrepancy> discrepancy;
};

RelationCheck check_relation(const IdentityDoc &doc, const ExprPtr &rel, std::int64_t order)
{
    auto summands = top_level_summands(rel);
    std::int64_t atom_order = order + 10;
    for (int round = 0; round < max_rounds; ++round) {
        SeriesEvaluator ev(doc.bindings, atom_order);
        std::optional<Rational> ref;
        for (const auto &t : summands) {
            QSeries s = ev.eval(t);
            if (!s.is_zero() && (!ref || s.valuation() > *ref)) ref = s.valuation();
        }
        QSeries r = ev.eval(rel);
        RelationCheck out;
        out.reference = ref.value_or(0);
        if (r.is_exact()) {
            out.checked = order;
        } else {
            Rational reach = r.validity() - out.reference;
            if (reach < order) {
                atom_order += ceil_int(Rational(order) - reach) + 2;
                continue;
            }
            out.checked = floor_int64(reach);
        }
        if (!r.is_zero()) {
            out.ok = false;
            out.discrepancy = Discrepancy{r.valuation(), r.leading()};
        }
        return out;
    }
    throw beyond_validity_error("could not reach order " + std::to_string(order) + " in " + doc.id);
}

} // namespace

VerificationReport verify(const IdentityDoc &doc, std::int64_t order)
{
    VerificationReport rep;
    try {
        if (doc.mode != Mode::series) throw std::invalid_argument(doc.id + " is not a series document");
        if (order < 0) throw std::invalid_argument("order must be non-negative");
        rep.status = Status::verified;
        rep.order_checked = -1;
        for (const auto &rel : doc.relations) {
            RelationCheck c = check_relation(doc, rel, order);
            if (rep.order_checked < 0 || c.checked < rep.order_checked) {
                rep.order_checked = c.checked;
                rep.reference_exponent = c.reference;
            }
            if (!c.ok && rep.status == Status::verified) {
                rep.status = Status::failed;
                rep.first_discrepancy = c.discrepancy;
                rep.reference_exponent = c.reference;
                rep.message = "relation does not vanish: " + to_string(rel);
            }
        }
    } catch (const std::exception &ex) {
        rep = VerificationReport{};
        rep.status = Status::error;
        rep.message = ex.what();
    }
    return rep;
}

Expansion expand(const IdentityDoc &doc, std::size_t terms)
{
    const ExprPtr &rel = doc.relation();
    std::int64_t atom_order = static_cast<std::int64_t>(terms) + (doc.lead ? *doc.lead : 0) + 10;
    for (int round = 0; round < max_rounds; ++round) {
        SeriesEvaluator ev(doc.bindings, std::max<std::int64_t>(atom_order, 1));
        QSeries s = ev.eval(rel);
        std::optional<Rational> lead;
        if (doc.lead) {
            lead = Rational(*doc.lead);
        } else if (!s.is_zero()) {
            lead = s.valuation();
        }
        if (lead) {
            Rational need = *lead + Rational(static_cast<long>(terms));
            if (s.is_exact() || s.validity() >= need) {
                return Expansion{*lead, s.coefficients(*lead, 1, terms)};
            }
            atom_order += ceil_int(need - s.validity()) + 2;
        } else {
            atom_order += static_cast<std::int64_t>(terms) + 10;
        }
    }
    throw beyond_validity_error("could not expand " + doc.id + " to " + std::to_string(terms) + " terms");
}

VerificationReport check_expansion(const IdentityDoc &doc)
{
    VerificationReport rep;
    try {
        if (doc.mode != Mode::expansion || !doc.golden) {
            throw std::invalid_argument(doc.id + " is not an expansion document");
        }
        const auto &g = *doc.golden;
        Expansion e = expand(doc, g.size());
        rep.status = Status::verified;
        rep.order_checked = static_cast<std::int64_t>(g.size());
        rep.reference_exponent = e.lead;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (e.coeffs[i] != Rational(g[i])) {
                rep.status = Status::failed;
                rep.first_discrepancy = Discrepancy{e.lead + Rational(static_cast<long>(i)), e.coeffs[i]};
                rep.message = "coefficient of q^" + to_string(rep.first_discrepancy->exponent) + " is " +
                              to_string(e.coeffs[i]) + ", golden list has " + g[i].get_str();
                break;
            }
        }
    } catch (const std::exception &ex) {
        rep = VerificationReport{};
        rep.status = Status::error;
        rep.message = ex.what();
    }
    return rep;
}

} // namespace qtheta
