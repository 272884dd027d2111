#include "hahnlog/cli.hpp"

#include "hahnlog/context.hpp"
#include "hahnlog/errors.hpp"
#include "hahnlog/measure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hahnlog {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Key/value report rendered as text lines or as a JSON object with the
/// same fields in the same order.
class Report {
public:
    void set(const std::string& key, const std::string& value) { fields_[key] = value; }
    void set(const std::string& key, std::uint64_t value) { fields_[key] = value; }
    void set(const std::string& key, bool value) { fields_[key] = value; }
    void set(const std::string& key, const std::vector<std::string>& values) { fields_[key] = values; }
    void set(const std::string& key, const std::vector<std::vector<std::string>>& rows) { fields_[key] = rows; }

    void render(std::ostream& out, bool as_json) const {
        if (as_json) {
            ordered_json j;
            j["format"] = "hahnlog-v1";
            for (const auto& [k, v] : fields_.items()) j[k] = v;
            out << j.dump(2) << "\n";
            return;
        }
        out << "hahnlog-v1\n";
        for (const auto& [k, v] : fields_.items()) {
            if (v.is_array()) {
                out << k << ":\n";
                for (const auto& item : v) {
                    if (item.is_array()) {
                        std::string row;
                        for (const auto& x : item) row += (row.empty() ? "" : ", ") + x.get<std::string>();
                        out << "  [" << row << "]\n";
                    } else {
                        out << "  " << item.get<std::string>() << "\n";
                    }
                }
            } else if (v.is_string()) {
                out << k << ": " << v.get<std::string>() << "\n";
            } else {
                out << k << ": " << v.dump() << "\n";
            }
        }
    }

private:
    ordered_json fields_ = ordered_json::object();
};

std::string read_input(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        if (!in) throw DomainError("cannot read " + arg);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    return arg;
}

long bits_for_width(const std::string& w) {
    Rational width;
    if (w.rfind("2^-", 0) == 0) {
        try {
            return std::stol(w.substr(3));
        } catch (...) {
            throw ParseError("malformed width '" + w + "'", 0, w.size());
        }
    }
    width = parse_rational(w);
    if (sgn(width) <= 0) throw DomainError("--max-width must be positive");
    long bits = 0;
    Rational scale(1);
    while (scale > width && bits < 1000000) {
        scale /= 2;
        ++bits;
    }
    return bits;
}

std::vector<std::vector<std::string>> matrix_rows(const SymMatrix& m) {
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<std::string> row;
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

struct Options {
    std::string context_file;
    std::optional<unsigned> precision;
    std::string max_width;
    std::optional<std::uint64_t> seed;
    bool json{false};
    bool both_orders{false};
    std::string datum{"mu"};
    std::string input;
};

void describe_parse_error(std::ostream& err, const ParseError& e, const std::string& text) {
    err << "error: " << e.what() << "\n";
    if (text.empty() || e.offset() > text.size()) return;
    std::size_t begin = text.rfind('\n', e.offset() == 0 ? 0 : e.offset() - 1);
    begin = begin == std::string::npos ? 0 : begin + 1;
    if (e.offset() < begin) begin = e.offset();
    std::size_t end = text.find('\n', e.offset());
    std::string line = text.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
    err << "  " << line << "\n  " << std::string(e.offset() - begin, ' ')
        << std::string(std::max<std::size_t>(1, std::min(e.length(), line.size() - std::min(line.size(), e.offset() - begin))), '^')
        << "\n";
}

const SExpr& log_argument(const std::vector<SExpr>& items) {
    if (items.size() == 2 && items[0].is_atom("log")) return items[1];
    if (items.size() == 1 && items[0].head() == "log" && items[0].items.size() == 2) return items[0].items[1];
    if (items.size() == 1) return items[0];
    if (items.empty()) throw ParseError("empty expression", 0);
    throw ParseError("expected one series expression", items[1].offset, items[1].length);
}

int execute(const std::string& command, const Options& opt, std::ostream& out, std::string& current_text) {
    Context ctx = default_context();
    if (!opt.context_file.empty()) {
        current_text = read_input(opt.context_file);
        ctx = parse_context(current_text);
    }
    if (opt.precision) ctx.series.order = *opt.precision;
    if (opt.seed) ctx.seed = *opt.seed;
    set_max_precision_bits(opt.max_width.empty() ? ctx.max_precision_bits : bits_for_width(opt.max_width));

    Report report;
    report.set("command", command);
    report.set("seed", ctx.seed);
    report.set("precision", std::uint64_t{ctx.series.order});

    if (command == "log") {
        if (opt.datum != "mu" && opt.datum != "mu_prime") throw DomainError("--datum must be mu or mu_prime");
        if (opt.datum == "mu_prime" && !ctx.mu_prime) throw DomainError("the context declares no mu_prime");
        const LogDatum& mu = opt.datum == "mu" ? ctx.mu : *ctx.mu_prime;
        current_text = read_input(opt.input);
        const std::vector<SExpr> items = parse_sexprs(current_text);
        const SExpr& arg = log_argument(items);
        ExprPtr term = parse_term(arg, ctx.group);
        if (term->has_log()) throw ParseError("the argument of log must be a series expression", arg.offset, arg.length);
        if (term->max_var() > 0) throw ParseError("the argument of log must not contain variables", arg.offset, arg.length);
        HahnSeries x = eval_subanalytic(*term, {}, ctx.series);
        report.set("datum", opt.datum);
        report.set("input", arg.to_string());
        report.set("argument", x.to_string());
        report.set("value", log_mu(mu, x, ctx.series).to_string());
    } else if (command == "connect") {
        if (!ctx.mu_prime) throw DomainError("connect needs a context with both mu and mu_prime");
        ConnectionResult r = connection(ctx.mu, *ctx.mu_prime, ctx.seed, ctx.series);
        report.set("result", std::string(r.equivalent() ? "EQUIVALENT" : "NOT EQUIVALENT"));
        if (r.equivalent()) {
            report.set("M", matrix_rows(r.map->m));
            std::vector<std::string> g;
            for (const auto& gk : r.map->g) g.push_back(gk.to_string());
            report.set("g", g);
        } else {
            report.set("witness", r.witness);
        }
        report.set("checks", r.checks);
    } else {
        current_text = read_input(opt.input);
        IntegralProblem problem = [&] {
            if (command == "integrate") return parse_integral(ctx.mu, current_text, ctx.series);
            Region region = parse_region(ctx.mu, current_text, ctx.series);
            LogPowerPoly one = LogPowerPoly::constant(PolyElem(HahnSeries::constant(ctx.group, SymbolicReal(1))), region.nvars());
            std::vector<std::size_t> order(region.nvars());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
            return IntegralProblem{one, region, order};
        }();
        report.set("region", problem.region.to_string());
        report.set("integrand", problem.integrand.to_string());
        PolyOrInfinity value = integrate_region(ctx.mu, problem.integrand, problem.region, problem.order, ctx.series);
        report.set("value", to_string(value));
        if (opt.both_orders) {
            FubiniReport f = fubini_check(ctx.mu, problem.integrand, problem.region, ctx.series);
            report.set("value_last_variable_first", to_string(f.inner_last));
            report.set("value_first_variable_first", to_string(f.inner_first));
            report.set("fubini", std::string(f.agree ? "agree" : "DISAGREE"));
        }
    }
    report.render(out, opt.json);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Logarithms, connections and measures over truncated Hahn series", "hahnlog"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--context", opt.context_file, "Context file (JSON after a hahnlog-v1 header)");
    app.add_option("--precision", opt.precision, "Series expansion order N");
    app.add_option("--max-width", opt.max_width, "Smallest enclosure width for comparisons, e.g. 1e-80 or 2^-256");
    app.add_option("--seed", opt.seed, "Seed for randomized verification");
    app.add_flag("--json", opt.json, "JSON report");
    app.add_flag("--both-orders", opt.both_orders, "Also integrate in the other order (Fubini check)");

    auto* log_cmd = app.add_subcommand("log", "mu-logarithm of a series expression");
    log_cmd->add_option("expr", opt.input, "Expression or file, e.g. \"(inv t1)\"")->required();
    log_cmd->add_option("--datum", opt.datum, "mu or mu_prime");
    app.add_subcommand("connect", "Logarithmic connection from mu to mu_prime");
    auto* int_cmd = app.add_subcommand("integrate", "Integral of a log-power integrand");
    int_cmd->add_option("file", opt.input, "(integral x1 lower upper body), file or text")->required();
    auto* meas_cmd = app.add_subcommand("measure", "Measure of a cylinder region");
    meas_cmd->add_option("file", opt.input, "(region (x1 lower upper) ...), file or text")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::string current_text;
    try {
        return execute(command, opt, out, current_text);
    } catch (const ParseError& e) {
        describe_parse_error(err, e, current_text);
        return kExitParse;
    } catch (const UndecidedComparison& e) {
        err << "error: " << e.what() << "\n  offending scalar: " << e.scalar() << "\n";
        return kExitUndecided;
    } catch (const OutOfCatalogue& e) {
        err << "error: out of catalogue: " << e.what() << "\n";
        return kExitCatalogue;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace hahnlog
