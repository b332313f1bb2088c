// SPDX-License-Identifier: MIT
#include "gls/cli.hpp"

#include "gls/fenchel.hpp"
#include "gls/grand_lebesgue.hpp"
#include "gls/model.hpp"
#include "gls/report_io.hpp"
#include "gls/riesz_operator.hpp"
#include "gls/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace gls {

namespace {

struct RunConfig {
    std::string command;

    std::string family = "outer";
    double a = 1.0;
    double gamma = 0.0;
    double b = 1.0;
    double nu = 1.0;
    int d = 1;

    std::vector<double> p;
    std::vector<double> t;
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    long long grid_n = 50;
    bool grid_log = true;

    std::string psi = "natural";
    double psi_a = 1.0;
    double psi_b = kInf;
    double psi_alpha = 0.0;
    double psi_beta = 0.0;
    double m = 1.0;
    double is_p = 2.0;
    double theta = 1.0;
    std::string psi_file;
    std::optional<double> u;

    std::string op = "none";
    double C = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    double a1 = 1.0;
    double b1 = kInf;
    double Cd = 1.0;
    double c_low = 1.0;
    double c_high = 1.0;

    std::string variant = "paper";
    bool exact_levelset = false;
    std::string suite = "all";
    std::optional<double> tol;

    double clip = 1e-6;
    double pmax = 1e4;
    long long grid_size = 256;
    double refine_tol = 1e-10;

    std::string out;
    std::string format = "csv";
};

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return format_double(x);
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (double x : xs) s += (s.empty() ? "" : " ") + num(x);
    return s;
}

// Every effective setting except the output path, in a fixed order.
std::string canonical(const RunConfig& c) {
    std::ostringstream os;
    auto opt = [](const std::optional<double>& x) { return x ? num(*x) : std::string("-"); };
    os << "command=" << c.command << "\nfamily=" << c.family << "\na=" << num(c.a)
       << "\ngamma=" << num(c.gamma) << "\nb=" << num(c.b) << "\nnu=" << num(c.nu)
       << "\nd=" << c.d << "\np=" << join(c.p) << "\nt=" << join(c.t)
       << "\ngrid-min=" << opt(c.grid_min) << "\ngrid-max=" << opt(c.grid_max)
       << "\ngrid-n=" << c.grid_n << "\ngrid-log=" << c.grid_log << "\npsi=" << c.psi
       << "\npsi-a=" << num(c.psi_a) << "\npsi-b=" << num(c.psi_b)
       << "\npsi-alpha=" << num(c.psi_alpha) << "\npsi-beta=" << num(c.psi_beta)
       << "\nm=" << num(c.m) << "\nis-p=" << num(c.is_p) << "\ntheta=" << num(c.theta)
       << "\npsi-file=" << c.psi_file << "\nu=" << opt(c.u) << "\nop=" << c.op
       << "\nC=" << num(c.C) << "\nalpha=" << num(c.alpha) << "\nbeta=" << num(c.beta)
       << "\na1=" << num(c.a1) << "\nb1=" << num(c.b1) << "\nCd=" << num(c.Cd)
       << "\nc-low=" << num(c.c_low) << "\nc-high=" << num(c.c_high)
       << "\nvariant=" << c.variant << "\nexact-levelset=" << c.exact_levelset
       << "\nsuite=" << c.suite << "\ntol=" << opt(c.tol) << "\nclip=" << num(c.clip)
       << "\npmax=" << num(c.pmax) << "\ngrid-size=" << c.grid_size
       << "\nrefine-tol=" << num(c.refine_tol) << "\nformat=" << c.format << '\n';
    return os.str();
}

Model build_model(const RunConfig& c) {
    Model m;
    if (c.family == "outer") {
        m = OuterModel{c.a, c.gamma, c.d};
    } else if (c.family == "inner") {
        m = InnerModel{c.b, c.nu, c.d};
    } else {
        m = SumModel{{c.a, c.gamma, c.d}, {c.b, c.nu, c.d}};
    }
    validate(m);
    return m;
}

SearchPolicy build_policy(const RunConfig& c) {
    if (!(c.clip >= 0.0 && c.clip < 0.5)) throw DomainError("--clip must lie in [0, 0.5)");
    if (!(c.pmax > 1.0) || !std::isfinite(c.pmax)) throw DomainError("--pmax must exceed 1");
    if (c.grid_size < 3) throw DomainError("--grid-size must be at least 3");
    if (!(c.refine_tol > 0.0)) throw DomainError("--refine-tol must be positive");
    return SearchPolicy{static_cast<std::size_t>(c.grid_size), c.refine_tol, c.clip, c.pmax};
}

std::vector<double> build_grid(double lo, double hi, long long n, bool log_spaced) {
    if (n < 2 || n > 10'000'000) throw DomainError("--grid-n must lie in [2, 1e7]");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("grid needs finite --grid-min < --grid-max");
    if (log_spaced && !(lo > 0.0)) throw DomainError("log-spaced grid needs --grid-min > 0");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = log_spaced ? lo * std::pow(hi / lo, s)
                            : lo + s * (hi - lo);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> t_grid(const RunConfig& c) {
    if (!c.t.empty()) return c.t;
    return build_grid(c.grid_min.value_or(1e-4), c.grid_max.value_or(1e4), c.grid_n, c.grid_log);
}

GeneratingFunction build_psi(const RunConfig& c, const Model& m) {
    if (c.psi == "natural") return natural_function(m);
    if (c.psi == "parametric")
        return GeneratingFunction::parametric(c.psi_a, c.psi_b, c.psi_alpha, c.psi_beta);
    if (c.psi == "power") return GeneratingFunction::power(c.m);
    if (c.psi == "iwaniec") return GeneratingFunction::iwaniec_sbordone(c.is_p, c.theta);
    if (c.psi_file.empty()) throw DomainError("--psi tabulated needs --psi-file");
    return read_psi_csv(c.psi_file);
}

OperatorProfile build_operator(const RunConfig& c) {
    if (c.op == "classical") return OperatorProfile::classical(c.Cd);
    if (c.op == "riesz-type") return OperatorProfile::riesz_type(c.C, c.alpha, c.beta, c.a1, c.b1);
    return OperatorProfile::identity();
}

void emit_table(std::ostream& os, const RunConfig& c, const Table& table, const std::string& hash,
                const std::vector<std::string>& extra_comments = {}) {
    if (c.format == "json") {
        write_json(os, table, hash);
        return;
    }
    std::string header = header_comment(hash);
    for (const std::string& line : extra_comments) header += "\n# " + line;
    write_csv(os, table, header);
}

int cmd_norm(const RunConfig& c, std::ostream& os, const std::string& hash) {
    const Model m = build_model(c);
    std::vector<double> ps = c.p;
    if (ps.empty()) {
        if (!c.grid_min || !c.grid_max) throw DomainError("norm: give --p or --grid-min/--grid-max");
        ps = build_grid(*c.grid_min, *c.grid_max, c.grid_n, c.grid_log);
    }
    const Interval dom = integrability(m);
    Table table;
    table.columns = {"p", "norm", "log_norm"};
    for (double p : ps) {
        if (!dom.contains(p)) {
            std::ostringstream msg;
            msg << "p = " << p << " is outside the integrability interval "
                << (dom.lo_closed ? "[" : "(") << dom.lo << ", " << dom.hi << ") of "
                << describe(m);
            throw RangeError(msg.str());
        }
        const double ln = log_lp_norm(m, p);
        table.rows.push_back({format_double(p), format_double(std::exp(ln)), format_double(ln)});
    }
    emit_table(os, c, table, hash);
    return kExitOk;
}

int cmd_tail(const RunConfig& c, std::ostream& os, const std::string& hash) {
    const Model m = build_model(c);
    const LevelSet mode = c.exact_levelset ? LevelSet::exact : LevelSet::shell;
    const AsymptoticVariant v =
        c.variant == "corrected" ? AsymptoticVariant::corrected : AsymptoticVariant::paper;
    const std::vector<double> ts = t_grid(c);
    for (double t : ts)
        if (!(t > 0.0)) throw DomainError("tail: t must be positive");

    Table table;
    table.columns = {"t", "exact", "asymptotic", "asymptotic_defined"};
    for (double t : ts) {
        double exact = 0.0;
        std::optional<double> asym;
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, OuterModel>) {
                    exact = tail_outer(x, t, mode);
                    if (x.gamma == 0.0 || t < 1.0) asym = tail_asymptotic_outer(x, t, v);
                } else if constexpr (std::is_same_v<T, InnerModel>) {
                    exact = tail_inner(x, t);
                    if (t > 1.0) asym = tail_asymptotic_inner(x, t, v);
                } else {
                    exact = tail_sum(x, t, mode);
                    if (t < 1.0) asym = tail_asymptotic_outer(x.outer, t, v);
                    if (t > 1.0) asym = tail_asymptotic_inner(x.inner, t, v);
                }
            },
            m);
        table.rows.push_back({format_double(t), format_double(exact),
                              format_double(asym.value_or(0.0)), asym ? "1" : "0"});
    }
    emit_table(os, c, table, hash, {"level set: " + std::string(c.exact_levelset ? "exact" : "shell") +
                                    ", asymptotic variant: " + c.variant});
    return kExitOk;
}

void emit_bound(std::ostream& os, const RunConfig& c, const BoundReport& report,
                const std::string& hash, const std::vector<std::string>& extra_comments) {
    if (c.format == "json") {
        write_bound_json(os, report, hash);
        return;
    }
    std::vector<std::string> comments = {"psi: " + report.psi + ", u: " + format_double(report.u)};
    comments.insert(comments.end(), extra_comments.begin(), extra_comments.end());
    emit_table(os, c, bound_table(report), hash, comments);
}

int cmd_bound(const RunConfig& c, std::ostream& os, const std::string& hash) {
    const Model m = build_model(c);
    const SearchPolicy policy = build_policy(c);
    const GeneratingFunction psi = build_psi(c, m);
    const std::vector<double> ts = t_grid(c);

    double u = 0.0;
    if (c.u) {
        u = *c.u;
    } else {
        const GlsNorm norm = gls_norm(LpProfile::of_model(m), psi, policy);
        if (norm.infinite || !(norm.value > 0.0))
            throw DomainError(describe(m) + " has infinite norm in G(" + psi.describe() + "); " +
                              norm.diagnostics);
        u = norm.value;
    }
    BoundReport report = tail_envelope(psi, u, ts, policy, Execution::parallel);
    if (!c.u) attach_reference(report, model_tail(m, LevelSet::exact));
    emit_bound(os, c, report, hash, {});
    return kExitOk;
}

int cmd_operator_bound(const RunConfig& c, std::ostream& os, std::ostream& err,
                       const std::string& hash) {
    const Model m = build_model(c);
    const SearchPolicy policy = build_policy(c);
    const OperatorProfile op = build_operator(c);
    if (op.kind() == OperatorProfile::Kind::classical_riesz && !riesz_hypothesis_holds(m))
        err << "warning: a*d <= 1, so the joint validity hypothesis for the Riesz transform "
               "fails; the bound is computed on I only\n";
    const TransferResult tr = transfer(op, GeneratingFunction::natural(LpProfile::of_model(m)));
    const BoundReport report =
        theorem_tail_bound(m, op, t_grid(c), {c.c_low, c.c_high}, policy, Execution::parallel);
    emit_bound(os, c, report, hash, {"transfer " + transfer_json(tr, op)});
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& os) {
    if (c.tol && !(*c.tol >= 0.0)) throw DomainError("--tol must be nonnegative");
    const std::vector<VerificationReport> reports = run_suite(c.suite, c.tol, Execution::parallel);
    if (!c.out.empty()) {
        std::ofstream f(c.out);
        if (!f) throw DomainError("cannot write '" + c.out + "'");
        write_jsonl(f, reports);
    }
    write_summary(os, reports);
    return all_pass(reports) ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Grand Lebesgue norms, tail envelopes and operator tail bounds for radial models",
                 "gls-tailbound"};
    app.require_subcommand(1);
    app.set_version_flag("--version", GLS_VERSION);
    app.set_config("--config", "", "flat key=value config file (flags take precedence)");

    app.add_option("--family", c.family)->check(CLI::IsMember({"outer", "inner", "sum"}));
    app.add_option("--a", c.a, "outer exponent a");
    app.add_option("--gamma", c.gamma, "outer log power gamma");
    app.add_option("--b", c.b, "inner exponent b");
    app.add_option("--nu", c.nu, "inner log power nu");
    app.add_option("--d", c.d, "dimension")->check(CLI::PositiveNumber);

    app.add_option("--p", c.p, "exponents for norm")->delimiter(',');
    app.add_option("--t", c.t, "levels t")->delimiter(',');
    app.add_option("--grid-min", c.grid_min);
    app.add_option("--grid-max", c.grid_max);
    app.add_option("--grid-n", c.grid_n);
    app.add_flag("--grid-log,!--grid-linear", c.grid_log, "log (default) or linear spacing");

    app.add_option("--psi", c.psi)
        ->check(CLI::IsMember({"natural", "parametric", "power", "iwaniec", "tabulated"}));
    app.add_option("--psi-a", c.psi_a);
    app.add_option("--psi-b", c.psi_b);
    app.add_option("--psi-alpha", c.psi_alpha);
    app.add_option("--psi-beta", c.psi_beta);
    app.add_option("--m", c.m, "power psi exponent");
    app.add_option("--is-p", c.is_p, "Iwaniec-Sbordone p");
    app.add_option("--theta", c.theta, "Iwaniec-Sbordone theta");
    app.add_option("--psi-file", c.psi_file, "CSV with header p,psi");
    app.add_option("--u", c.u, "GLS norm used by bound (default: computed from the model)");

    app.add_option("--op", c.op)->check(CLI::IsMember({"none", "riesz-type", "classical"}));
    app.add_option("--C", c.C);
    app.add_option("--alpha", c.alpha);
    app.add_option("--beta", c.beta);
    app.add_option("--a1", c.a1);
    app.add_option("--b1", c.b1);
    app.add_option("--Cd", c.Cd);
    app.add_option("--c-low", c.c_low);
    app.add_option("--c-high", c.c_high);

    app.add_option("--variant", c.variant)->check(CLI::IsMember({"paper", "corrected"}));
    app.add_flag("--exact-levelset", c.exact_levelset);
    app.add_option("--suite", c.suite);
    app.add_option("--tol", c.tol, "override every verification tolerance");

    app.add_option("--clip", c.clip);
    app.add_option("--pmax", c.pmax);
    app.add_option("--grid-size", c.grid_size);
    app.add_option("--refine-tol", c.refine_tol);

    app.add_option("--out", c.out, "output file (default stdout)");
    app.add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));

    for (const char* name : {"norm", "tail", "bound", "operator-bound", "verify"})
        app.add_subcommand(name)->fallthrough();

    std::vector<std::string> args = args_in;
    if (std::find(args.begin(), args.end(), "--config") == args.end()) {
        if (const char* env = std::getenv("GLS_TAILBOUND_CONFIG"); env != nullptr && *env != '\0') {
            args.emplace_back("--config");
            args.emplace_back(env);
        }
    }
    std::reverse(args.begin(), args.end());

    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    c.command = app.get_subcommands().front()->get_name();
    try {
        const std::string hash = hex64(fnv1a(canonical(c)));
        std::ofstream file;
        std::ostream* os = &out;
        if (!c.out.empty() && c.command != "verify") {
            file.open(c.out);
            if (!file) throw DomainError("cannot write '" + c.out + "'");
            os = &file;
        }
        if (c.command == "norm") return cmd_norm(c, *os, hash);
        if (c.command == "tail") return cmd_tail(c, *os, hash);
        if (c.command == "bound") return cmd_bound(c, *os, hash);
        if (c.command == "operator-bound") return cmd_operator_bound(c, *os, err, hash);
        return cmd_verify(c, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace gls
