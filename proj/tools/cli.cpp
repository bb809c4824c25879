#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include <qtheta/errors.hpp>
#include <qtheta/numeric.hpp>
#include <qtheta/radical.hpp>

namespace qtheta::cli {

using nlohmann::json;

bool Report::all_verified() const
{
    return std::all_of(entries.begin(), entries.end(), [](const Record &r) { return r.status == "verified"; });
}

json to_json(const Report &r)
{
    json entries = json::array();
    for (const auto &e : r.entries) {
        json j = {{"id", e.id},
                  {"paper_label", e.paper_label},
                  {"mode", e.mode},
                  {"status", e.status},
                  {"wall_time_ms", e.wall_time_ms}};
        if (e.order_checked) j["order_checked"] = *e.order_checked;
        if (e.residual) j["residual"] = *e.residual;
        if (e.first_discrepancy) {
            j["first_discrepancy"] = {{"exponent", e.first_discrepancy->exponent},
                                      {"coefficient", e.first_discrepancy->coefficient}};
        }
        if (!e.message.empty()) j["message"] = e.message;
        entries.push_back(std::move(j));
    }
    return {{"version", r.version}, {"entries", std::move(entries)}};
}

Report report_from_json(const json &j)
{
    Report r;
    r.version = j.at("version").get<std::string>();
    for (const auto &e : j.at("entries")) {
        Record rec;
        rec.id = e.at("id").get<std::string>();
        rec.paper_label = e.at("paper_label").get<std::string>();
        rec.mode = e.at("mode").get<std::string>();
        rec.status = e.at("status").get<std::string>();
        rec.wall_time_ms = e.at("wall_time_ms").get<double>();
        if (e.contains("order_checked")) rec.order_checked = e["order_checked"].get<std::int64_t>();
        if (e.contains("residual")) rec.residual = e["residual"].get<std::string>();
        if (e.contains("first_discrepancy")) {
            const auto &d = e["first_discrepancy"];
            rec.first_discrepancy = Discrepancy{d.at("exponent").get<std::string>(), d.at("coefficient").get<std::string>()};
        }
        if (e.contains("message")) rec.message = e["message"].get<std::string>();
        r.entries.push_back(std::move(rec));
    }
    return r;
}

Record run_entry(const RegistryEntry &e, const RunOptions &opt)
{
    auto t0 = std::chrono::steady_clock::now();
    Record rec;
    rec.id = e.id;
    rec.paper_label = e.paper_label;
    rec.mode = to_string(e.doc.mode);
    try {
        if (e.doc.mode == Mode::numeric) {
            NumericReport nr = check_numeric_identity(e.doc, Precision{opt.precision});
            rec.status = to_string(nr.status);
            rec.residual = nr.residual.to_string(6);
            rec.message = nr.message;
            if (nr.status == Status::failed) {
                // Worst sample point and its residual.
                const SampleResidual *worst = nullptr;
                for (const auto &s : nr.samples) {
                    if (!worst || !(s.residual <= worst->residual)) worst = &s;
                }
                if (worst) rec.first_discrepancy = Discrepancy{worst->sample, worst->residual.to_string(6)};
            }
        } else {
            VerificationReport vr = e.doc.mode == Mode::expansion
                                        ? check_expansion(e.doc)
                                        : verify(e.doc, opt.order.value_or(e.doc.order.value_or(default_order)));
            rec.status = to_string(vr.status);
            if (vr.status != Status::error) rec.order_checked = vr.order_checked;
            rec.message = vr.message;
            if (vr.first_discrepancy) {
                rec.first_discrepancy = Discrepancy{to_string(vr.first_discrepancy->exponent),
                                                    to_string(vr.first_discrepancy->coefficient)};
            }
        }
    } catch (const std::exception &ex) {
        rec.status = to_string(Status::error);
        rec.message = ex.what();
    }
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

Report run_entries(const std::vector<RegistryEntry> &entries, const RunOptions &opt, unsigned jobs)
{
    Report rep;
    rep.entries.resize(entries.size());
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(entries.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < entries.size();) rep.entries[i] = run_entry(entries[i], opt);
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    std::sort(rep.entries.begin(), rep.entries.end(), [](const Record &a, const Record &b) { return a.id < b.id; });
    return rep;
}

namespace {

enum class Format { text, json };

// Accepts "a", "a/b" and plain decimals such as "2.5".
Rational parse_number(const std::string &s)
{
    auto dot = s.find('.');
    if (dot == std::string::npos) return parse_rational(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    if (frac == 0 || s.find('.', dot + 1) != std::string::npos) throw std::invalid_argument("not a number: '" + s + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational r(parse_rational(digits).get_num(), den);
    r.canonicalize();
    return r;
}

void print_text(const Report &rep, std::ostream &out)
{
    for (const auto &e : rep.entries) {
        out << std::left << std::setw(4) << e.id << "  " << std::setw(8) << e.status << "  " << std::setw(9) << e.mode;
        if (e.order_checked) out << "  order_checked=" << *e.order_checked;
        if (e.residual) out << "  residual=" << *e.residual;
        out << "  (" << std::fixed << std::setprecision(1) << e.wall_time_ms << " ms)\n";
        out.unsetf(std::ios::floatfield);
        out << "      " << e.paper_label << "\n";
        if (e.first_discrepancy) {
            out << "      first discrepancy at " << e.first_discrepancy->exponent << ": " << e.first_discrepancy->coefficient
                << "\n";
        }
        if (!e.message.empty()) out << "      " << e.message << "\n";
    }
    std::size_t ok = std::count_if(rep.entries.begin(), rep.entries.end(), [](const Record &r) { return r.status == "verified"; });
    out << ok << "/" << rep.entries.size() << " verified\n";
}

int emit(const Report &rep, Format fmt, std::ostream &out)
{
    if (fmt == Format::json) out << to_json(rep).dump(2) << "\n";
    else print_text(rep, out);
    return rep.all_verified() ? 0 : 1;
}

unsigned default_jobs()
{
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

int cmd_list(const std::optional<std::string> &category, Format fmt, std::ostream &out)
{
    auto entries = list_entries(category);
    if (fmt == Format::json) {
        json arr = json::array();
        for (const auto &e : entries) {
            arr.push_back({{"id", e.id}, {"paper_label", e.paper_label}, {"category", e.category}, {"mode", to_string(e.doc.mode)}});
        }
        out << arr.dump(2) << "\n";
        return 0;
    }
    for (const auto &e : entries) {
        out << std::left << std::setw(4) << e.id << "  " << std::setw(18) << e.category << "  " << e.paper_label << "\n";
    }
    return 0;
}

int cmd_expand(const std::string &id, std::optional<std::size_t> terms, Format fmt, std::ostream &out)
{
    const RegistryEntry &e = get_entry(id);
    std::size_t n = terms.value_or(e.doc.golden ? e.doc.golden->size() : 10);
    Expansion x = expand(e.doc, n);
    if (fmt == Format::json) {
        json coeffs = json::array();
        for (const auto &c : x.coeffs) coeffs.push_back(to_string(c));
        out << json{{"id", e.id}, {"paper_label", e.paper_label}, {"lead", to_string(x.lead)}, {"coefficients", coeffs}}.dump(2)
            << "\n";
        return 0;
    }
    out << e.id << "  " << e.paper_label << "\n";
    out << "lead exponent " << to_string(x.lead) << "\n";
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
        out << "  q^" << to_string(x.lead + Rational(static_cast<long>(i))) << "  " << to_string(x.coeffs[i]) << "\n";
    }
    return 0;
}

int cmd_eval_b(const std::string &s_text, const std::string &t_text, int precision,
               const std::optional<std::string> &closed_form, Format fmt, std::ostream &out)
{
    Rational s = parse_number(s_text), t = parse_number(t_text);
    Precision P{precision};
    BigReal b = eval_b(s, t, P);
    json j = {{"s", to_string(s)}, {"t", to_string(t)}, {"precision", precision}, {"value", b.to_string(precision)}};
    int code = 0;
    std::string radical_text;
    if (closed_form) {
        radical_text = *closed_form;
        try {
            const RegistryEntry &e = get_entry(*closed_form);
            const std::string *r = e.doc.attr("radical");
            if (!r) throw domain_error("entry " + e.id + " has no closed form");
            radical_text = *r;
        } catch (const not_found_error &) {
        }
        BigReal r = eval_radical(parse_radical(radical_text), P.bits(guard_digits));
        BigReal diff = abs(b - r);
        BigReal tol = ten_pow(-(precision - default_numeric_guard), P.bits(guard_digits));
        j["closed_form"] = radical_text;
        j["closed_form_value"] = r.to_string(precision);
        j["difference"] = diff.to_string(6);
        j["tolerance"] = tol.to_string(3);
        j["status"] = diff < tol ? "verified" : "failed";
        if (!(diff < tol)) code = 1;
    }
    if (fmt == Format::json) {
        out << j.dump(2) << "\n";
        return code;
    }
    out << "b(" << to_string(s) << ", " << to_string(t) << ") = " << b.to_string(precision) << "\n";
    if (closed_form) {
        out << "closed form " << radical_text << " = " << j["closed_form_value"].get<std::string>() << "\n";
        out << "difference " << j["difference"].get<std::string>() << " (" << j["status"].get<std::string>() << ", tolerance "
            << j["tolerance"].get<std::string>() << ")\n";
    }
    return code;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact q-series and numeric checks of theta-function identities"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    std::string format = "text";
    auto add_format = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    std::optional<std::string> category;
    auto *list = app.add_subcommand("list", "List registry entries");
    list->add_option("--category", category, "Only entries of this category");
    add_format(list);

    std::vector<std::string> ids;
    bool all = false;
    std::optional<std::int64_t> order;
    int precision = 80;
    unsigned jobs = default_jobs();
    auto *verify_cmd = app.add_subcommand("verify", "Verify registry entries");
    verify_cmd->add_option("ids", ids, "Entry ids");
    verify_cmd->add_flag("--all", all, "Verify every entry");
    verify_cmd->add_option("--order", order, "Series order past the reference exponent")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--precision", precision, "Decimal digits for numeric entries")->check(CLI::Range(30, 100000));
    verify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--category", category, "Restrict --all to a category");
    add_format(verify_cmd);

    std::string expand_id;
    std::optional<std::size_t> terms;
    auto *expand_cmd = app.add_subcommand("expand", "Print the q-expansion of an entry's relation");
    expand_cmd->add_option("id", expand_id, "Entry id")->required();
    expand_cmd->add_option("--terms", terms, "Number of coefficients")->check(CLI::PositiveNumber);
    add_format(expand_cmd);

    std::string s_text, t_text = "5";
    std::optional<std::string> closed_form;
    auto *eval_b_cmd = app.add_subcommand("eval-b", "Evaluate b(s, t)");
    eval_b_cmd->add_option("--s", s_text, "s > 0")->required();
    eval_b_cmd->add_option("--t", t_text, "t >= 1");
    eval_b_cmd->add_option("--precision", precision, "Decimal digits")->check(CLI::Range(30, 100000));
    eval_b_cmd->add_option("--closed-form", closed_form, "Registry id or radical expression to compare with");
    add_format(eval_b_cmd);

    auto *check_cmd = app.add_subcommand("check-values", "Run every numeric registry entry");
    check_cmd->add_option("--precision", precision, "Decimal digits")->check(CLI::Range(30, 100000));
    check_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_format(check_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Format fmt = format == "json" ? Format::json : Format::text;
    try {
        if (list->parsed()) return cmd_list(category, fmt, out);
        if (verify_cmd->parsed()) {
            if (all == !ids.empty()) {
                err << "verify: give entry ids or --all\n";
                return 2;
            }
            std::vector<RegistryEntry> chosen;
            if (all) chosen = list_entries(category);
            for (const auto &id : ids) chosen.push_back(get_entry(id));
            return emit(run_entries(chosen, RunOptions{order, precision}, jobs), fmt, out);
        }
        if (expand_cmd->parsed()) return cmd_expand(expand_id, terms, fmt, out);
        if (eval_b_cmd->parsed()) return cmd_eval_b(s_text, t_text, precision, closed_form, fmt, out);
        if (check_cmd->parsed()) {
            return emit(run_entries(list_entries(std::string("numeric")), RunOptions{std::nullopt, precision}, jobs), fmt, out);
        }
    } catch (const error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace qtheta::cli
