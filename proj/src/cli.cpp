#include "ellpoisson/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ellpoisson/brackets.hpp"
#include "ellpoisson/casimirs.hpp"
#include "ellpoisson/elliptic.hpp"
#include "ellpoisson/leaves.hpp"
#include "ellpoisson/suite.hpp"

#ifndef ELLPOISSON_DEFAULT_GOLDEN_DIR
#define ELLPOISSON_DEFAULT_GOLDEN_DIR ""
#endif

namespace ellpoisson
{

namespace
{

// Raised for malformed flags and values; maps to exit code 2.
struct usage_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

constexpr double max_triples = 1e4;

const std::vector<std::string> commands = {
    "bracket-table", "verify-jacobi", "verify-closure", "verify-elliptic", "casimir-build",
    "casimir-verify", "involution", "leaves-verify", "all"};

struct Options
{
    std::string command;
    std::string n;
    std::string window;
    std::string tau = "i";
    std::optional<std::uint64_t> seed;
    int samples = 0;
    double tol = 0.0;
    bool formal_n = false;
    bool formal_lambda = false;
    std::string out;
    bool table = false;
    bool force = false;
    bool timing = false;
    std::string format = "text";
    std::string convention = "corrected";
    int p = 0;
    std::string golden_dir = ELLPOISSON_DEFAULT_GOLDEN_DIR;
};

// Inclusive integer range parsed from "a" or "a..b".
std::vector<int> parse_int_range(const std::string &text, const std::string &flag)
{
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const int v = std::stoi(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument(text);
            }
            return {v};
        }
        const std::string lo_s = text.substr(0, dots), hi_s = text.substr(dots + 2);
        const int lo = std::stoi(lo_s, &used);
        if (used != lo_s.size()) {
            throw std::invalid_argument(text);
        }
        const int hi = std::stoi(hi_s, &used);
        if (used != hi_s.size() || hi < lo) {
            throw std::invalid_argument(text);
        }
        std::vector<int> vals;
        for (int v = lo; v <= hi; ++v) {
            vals.push_back(v);
        }
        return vals;
    } catch (const std::logic_error &) {
        throw usage_error("invalid " + flag + " '" + text + "' (expected N or LO..HI)");
    }
}

// "lo..hi" or "F_n" / "Fn".
IndexSet parse_window(const std::string &text)
{
    if (!text.empty() && text[0] == 'F') {
        const std::string rest = text.substr(text.size() > 1 && text[1] == '_' ? 2 : 1);
        const auto v = parse_int_range(rest, "--window");
        if (v.size() != 1 || v[0] < 0) {
            throw usage_error("invalid --window '" + text + "'");
        }
        return IndexSet::f_n(v[0]);
    }
    if (text.find("..") == std::string::npos) {
        throw usage_error("invalid --window '" + text + "' (expected LO..HI or F_N)");
    }
    const auto v = parse_int_range(text, "--window");
    return IndexSet::window(v.front(), v.back());
}

Rational parse_n_value(const std::string &text)
{
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument &) {
        throw usage_error("invalid --n '" + text + "'");
    }
}

cplx parse_tau(const std::string &text)
{
    try {
        return parse_complex(text);
    } catch (const std::invalid_argument &) {
        throw usage_error("malformed --tau '" + text + "'");
    }
}

Lattice tau_lattice(const std::string &text)
{
    const cplx tau = parse_tau(text);
    try {
        return lattice_from_tau(tau);
    } catch (const std::invalid_argument &ex) {
        throw usage_error(std::string("--tau: ") + ex.what());
    }
}

std::uint64_t resolve_seed(const Options &o)
{
    if (o.seed) {
        return *o.seed;
    }
    if (const char *env = std::getenv("ELLIPTIC_POISSON_SEED")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size()) {
                throw std::invalid_argument(env);
            }
            return v;
        } catch (const std::logic_error &) {
            throw usage_error(std::string("invalid ELLIPTIC_POISSON_SEED '") + env + "'");
        }
    }
    return 1;
}

SamplePlan make_plan(const Options &o, int default_count, double default_tol)
{
    SamplePlan plan;
    plan.seed = resolve_seed(o);
    plan.count = o.samples > 0 ? o.samples : default_count;
    plan.tolerance = o.tol > 0.0 ? o.tol : default_tol;
    return plan;
}

// Collects reports, timing each producer when requested.
class Runner
{
public:
    explicit Runner(bool timing) : timing_(timing) {}

    void add(const std::function<Report()> &producer)
    {
        const auto start = std::chrono::steady_clock::now();
        Report r = producer();
        if (timing_) {
            r.set_duration(
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
        reports_.push_back(std::move(r));
    }
    void add_report(Report r) { reports_.push_back(std::move(r)); }

    const std::vector<Report> &reports() const { return reports_; }
    bool timing() const { return timing_; }

private:
    bool timing_;
    std::vector<Report> reports_;
};

std::optional<Rational> fixed_n(const Options &o)
{
    if (o.formal_n && !o.n.empty()) {
        throw usage_error("--formal-n and --n are mutually exclusive");
    }
    if (o.n.empty() || o.formal_n) {
        return std::nullopt;
    }
    return parse_n_value(o.n);
}

BracketSpec bracket_for(const Options &o)
{
    BracketSpec spec = o.formal_lambda ? BracketSpec::formal_pencil() : BracketSpec::elliptic();
    if (const auto n = fixed_n(o)) {
        spec = spec.with_n(*n);
    }
    return spec;
}

std::vector<int> n_list(const Options &o, const std::string &fallback, int minimum)
{
    const auto vals = parse_int_range(o.n.empty() ? fallback : o.n, "--n");
    for (const int v : vals) {
        if (v < minimum) {
            throw usage_error("--n must be >= " + std::to_string(minimum) + " for " + o.command);
        }
    }
    return vals;
}

void cmd_bracket_table(const Options &o, Runner &run)
{
    const IndexSet window = parse_window(o.window.empty() ? "0..4" : o.window);
    const auto n = fixed_n(o);
    run.add([&] {
        Report rep("bracket_table",
                   {{"n", n ? to_string(*n) : "formal"}, {"window", window.describe()}});
        const auto gens = window.members();
        json rows = json::array();
        const auto fix = [&](EPoly p) { return n ? substitute_param(p, Symbol::n, ParamPoly(*n)) : p; };
        BracketSpec ell = BracketSpec::elliptic();
        if (n) {
            ell = ell.with_n(*n);
        }
        for (std::size_t i = 0; i < gens.size(); ++i) {
            for (std::size_t j = i + 1; j < gens.size(); ++j) {
                const int a = gens[i], b = gens[j];
                json row = {{"alpha", a}, {"beta", b}};
                for (int k = 1; k <= 3; ++k) {
                    row["B" + std::to_string(k)] = to_string(fix(bracket_basis(k, a, b)));
                }
                row["elliptic"] = to_string(bracket_generators(a, b, ell));
                rows.push_back(row);
            }
        }
        rep.note("rows", rows);
        return rep;
    });
}

void cmd_verify_jacobi(const Options &o, Runner &run)
{
    const IndexSet window = parse_window(o.window.empty() ? "F_10" : o.window);
    const double m = static_cast<double>(window.members().size());
    const double triples = m * (m + 1) * (m + 2) / 6;
    if (triples > max_triples && !o.force) {
        throw usage_error("window " + window.describe() + " has " + std::to_string(long(triples))
                          + " triples (> 10^4); pass --force to run it");
    }
    const BracketSpec spec = bracket_for(o);
    run.add([&] { return verify_jacobi_window(window, spec); });
}

void cmd_verify_closure(const Options &o, Runner &run)
{
    for (const int n : n_list(o, "2..10", 2)) {
        const BracketSpec base = o.formal_lambda ? BracketSpec::formal_pencil() : BracketSpec::elliptic();
        run.add([&] { return verify_closure(n, base.with_n(Rational(n))); });
    }
}

void cmd_verify_elliptic(const Options &o, Runner &run)
{
    const Lattice lat = tau_lattice(o.tau);
    const auto ns = o.n.empty() ? std::vector<int>{2, 3, 5, 8} : n_list(o, "", 2);
    run.add([&] { return weierstrass_self_test(lat, make_plan(o, 20, 1e-9)); });
    run.add([&] { return zeta_identity_sweep(lat, make_plan(o, 20, 1e-8)); });
    for (const int n : ns) {
        const IndexSet window = o.window.empty() ? IndexSet::f_n(std::min(8, n)) : parse_window(o.window);
        run.add([&] { return verify_functional(lat, Rational(n), window, make_plan(o, 20, 1e-6)); });
    }
}

int single_n(const Options &o, int minimum)
{
    if (o.n.empty()) {
        throw usage_error(o.command + " requires --n");
    }
    const auto v = parse_int_range(o.n, "--n");
    if (v.size() != 1 || v[0] < minimum) {
        throw usage_error(o.command + ": --n must be a single integer >= " + std::to_string(minimum));
    }
    return v[0];
}

int cmd_casimir_build(const Options &o, std::ostream &out)
{
    const int n = single_n(o, 3);
    const CasimirSet cs = casimirs(n);
    if (o.format == "text") {
        out << render_casimir_text(cs);
    } else if (o.format == "json") {
        for (std::size_t i = 0; i < cs.elements.size(); ++i) {
            json j = {{"n", n},
                      {"name", cs.names[i]},
                      {"degree", cs.elements[i].degree()},
                      {"terms", cs.elements[i].terms().size()},
                      {"poly", to_string(cs.elements[i])}};
            out << j.dump() << '\n';
        }
    } else {
        throw usage_error("--format must be json or text");
    }
    return exit_pass;
}

void cmd_casimir_verify(const Options &o, Runner &run)
{
    for (const int n : n_list(o, "3..8", 3)) {
        run.add([&] { return verify_central(casimirs(n)); });
    }
}

void cmd_involution(const Options &o, Runner &run)
{
    for (const int n : n_list(o, "4..6", 3)) {
        run.add([&] { return involution_family(n); });
    }
}

void cmd_leaves_verify(const Options &o, Runner &run)
{
    const int n = single_n(o, 2);
    if (o.p < 1) {
        throw usage_error("leaves-verify requires --p >= 1");
    }
    SignConvention convention;
    try {
        convention = convention_from_name(o.convention);
    } catch (const std::invalid_argument &ex) {
        throw usage_error(ex.what());
    }
    const LeafConfig cfg{o.p, Rational(n), tau_lattice(o.tau)};
    run.add([&] {
        return leaf_homomorphism_check(cfg, IndexSet::f_n(n), make_plan(o, 10, 1e-6), convention);
    });
    if (n >= 3) {
        const CasimirSet cs = casimirs(n);
        if (2 * o.p < n) {
            run.add([&] { return kernel_check(cfg, cs, make_plan(o, 10, 1e-8)); });
        }
        for (std::size_t i = 0; i < cs.elements.size(); ++i) {
            if (cs.elements[i].degree() == static_cast<std::size_t>(o.p) + 1) {
                run.add([&] {
                    Report r = diagonal_vanish_check(cfg, cs.elements[i], make_plan(o, 10, 1e-8));
                    r.parameters()["element"] = cs.names[i];
                    return r;
                });
            }
        }
    }
    const SamplePlan plan = make_plan(o, 10, 1e-8);
    LeafSampler sampler(cfg.lattice, cfg.p, plan);
    for (int k = 0; k < plan.count; ++k) {
        const LeafSample s = sampler.sample();
        run.add([&] { return nondegeneracy_check(cfg, s); });
    }
}

int cmd_all(const Options &o, std::ostream &out)
{
    SuiteOptions opts;
    opts.seed = resolve_seed(o);
    opts.golden_dir = o.golden_dir;
    const auto results = run_acceptance(opts);
    out << serialize_reports(results);
    std::size_t failed = 0;
    std::vector<Report> all_reports;
    for (const auto &c : results) {
        json j = {{"criterion", c.id}, {"title", c.title}, {"status", c.passed ? "pass" : "fail"}};
        out << j.dump() << '\n';
        failed += c.passed ? 0 : 1;
        all_reports.insert(all_reports.end(), c.reports.begin(), c.reports.end());
    }
    json summary = {{"summary",
                     {{"command", "all"},
                      {"status", failed == 0 ? "pass" : "fail"},
                      {"criteria", results.size()},
                      {"failed", failed}}}};
    out << summary.dump() << '\n';
    if (o.table) {
        out << render_table(all_reports);
    }
    return failed == 0 ? exit_pass : exit_failure;
}

int emit(const Options &o, const Runner &run, std::ostream &out)
{
    std::size_t failed = 0;
    for (const auto &r : run.reports()) {
        out << r.to_json(run.timing()).dump() << '\n';
        failed += r.passed() ? 0 : 1;
    }
    json summary = {{"summary",
                     {{"command", o.command},
                      {"status", failed == 0 ? "pass" : "fail"},
                      {"reports", run.reports().size()},
                      {"failed", failed}}}};
    out << summary.dump() << '\n';
    if (o.table) {
        out << render_table(run.reports());
    }
    return failed == 0 ? exit_pass : exit_failure;
}

int dispatch(const Options &o, std::ostream &out)
{
    if (o.command == "casimir-build") {
        return cmd_casimir_build(o, out);
    }
    if (o.command == "all") {
        return cmd_all(o, out);
    }
    Runner run(o.timing);
    if (o.command == "bracket-table") {
        cmd_bracket_table(o, run);
    } else if (o.command == "verify-jacobi") {
        cmd_verify_jacobi(o, run);
    } else if (o.command == "verify-closure") {
        cmd_verify_closure(o, run);
    } else if (o.command == "verify-elliptic") {
        cmd_verify_elliptic(o, run);
    } else if (o.command == "casimir-verify") {
        cmd_casimir_verify(o, run);
    } else if (o.command == "involution") {
        cmd_involution(o, run);
    } else if (o.command == "leaves-verify") {
        cmd_leaves_verify(o, run);
    }
    return emit(o, run, out);
}

// "casimir build" -> "casimir-build", "leaves verify" -> "leaves-verify".
std::vector<std::string> join_two_word_command(std::vector<std::string> args)
{
    if (args.size() >= 2) {
        const std::string joined = args[0] + "-" + args[1];
        if ((args[0] == "casimir" || args[0] == "leaves")
            && std::find(commands.begin(), commands.end(), joined) != commands.end()) {
            args.erase(args.begin());
            args[0] = joined;
        }
    }
    return args;
}

} // namespace

int run_cli(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err)
{
    Options o;
    CLI::App app{"Verification and construction driver for elliptic Poisson algebras",
                 "ellpoisson"};
    app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
    app.add_option("command", o.command, "Command to run")
        ->required()
        ->check(CLI::IsMember(commands));
    app.add_option("--n", o.n, "Value of n, or an integer range LO..HI");
    app.add_option("--window", o.window, "Generator window LO..HI or F_N");
    app.add_option("--tau", o.tau, "Period ratio a+bi (omega1 = 1)");
    std::uint64_t seed = 1;
    auto *seed_opt =
        app.add_option("--seed", seed, "Sampling seed (default: ELLIPTIC_POISSON_SEED or 1)");
    app.add_option("--samples", o.samples, "Number of samples")->check(CLI::PositiveNumber);
    app.add_option("--tol", o.tol, "Tolerance override")->check(CLI::PositiveNumber);
    app.add_flag("--formal-n", o.formal_n, "Keep n formal");
    app.add_flag("--formal-lambda", o.formal_lambda, "Use the formal pencil l1*B1 + l2*B2 + l3*B3");
    app.add_option("--out", o.out, "Write the report stream to this file");
    app.add_flag("--table", o.table, "Append a human-readable table");
    app.add_flag("--force", o.force, "Allow Jacobi sweeps over more than 10^4 triples");
    app.add_flag("--timing", o.timing, "Include per-report durations");
    app.add_option("--format", o.format, "casimir-build output: text or json");
    app.add_option("--convention", o.convention, "Leaf sign convention: corrected or flipped");
    app.add_option("--p", o.p, "Number of leaf points");
    app.add_option("--golden-dir", o.golden_dir, "Golden file directory used by 'all'");

    auto args = join_two_word_command(raw_args);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    }
    if (seed_opt->count() > 0) {
        o.seed = seed;
    }

    try {
        if (o.out.empty()) {
            return dispatch(o, out);
        }
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            throw usage_error("cannot open --out '" + o.out + "'");
        }
        return dispatch(o, file);
    } catch (const usage_error &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_failure;
    }
}

} // namespace ellpoisson
