// plateau_lab: command-line front end for the simulation, bound and
// exact-oracle routines.

#include <CLI11.hpp>

#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <plateau/plateau.hpp>

namespace {

using namespace plateau;
using harness::format_double;

constexpr int exit_ok = 0;
constexpr int exit_io = 1;
constexpr int exit_usage = 2;
constexpr int exit_assert = 3;

/// Raised when a computed result violates the property the subcommand
/// asserts (negative drift slack, estimate outside its 3-SE band).
struct AssertionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for I/O problems; mapped to exit code 1.
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

InitDistribution parse_init(const std::string& s)
{
    if (s == "uniform")
        return init::Uniform{};
    if (s == "uniform-nonopt")
        return init::UniformNonOptimal{};
    if (s.rfind("ones=", 0) == 0)
        return init::FixedOnes{harness::parse_int<std::size_t>(std::string_view(s).substr(5))};
    if (s.rfind("point=", 0) == 0)
        return init::Point{BitString::from_string(std::string_view(s).substr(6))};
    throw std::invalid_argument("--init must be uniform, uniform-nonopt, ones=J or point=BITS; got '" + s + "'");
}

/// Writes `text` to `path`, or to stdout when `path` is empty.
void emit(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoFailure("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoFailure("write to '" + path + "' failed");
}

std::string svg_path_for(const std::string& out)
{
    return std::filesystem::path(out).replace_extension(".svg").string();
}

void check_workers(unsigned workers)
{
    if (workers == 0)
        throw std::invalid_argument("--workers must be >= 1");
}

struct Options {
    std::string function = "majority";
    std::vector<int> n{100};
    std::vector<int> r{1};
    std::vector<std::string> ell{"1"};
    std::string r_rule = "fixed";
    int k = 2;
    std::size_t blocks = 20;
    std::size_t runs = 100;
    std::uint64_t seed = 1;
    std::uint64_t cap = ea::default_max_iters;
    std::string init = "uniform";
    std::string out;
    std::string in;
    unsigned workers = harness::default_workers();
    bool svg = false;
    bool no_check = false;
    bool all_levels = false;
    std::string mode = "mutation";
    double tolerance = 1e-9;
    std::string x_axis = "ell";
    std::string group = "n";
    bool log_x = false;
    bool log_y = false;
    std::string title;
};

int single(const std::vector<int>& v, const char* flag)
{
    if (v.size() != 1)
        throw std::invalid_argument(std::string(flag) + " takes exactly one value here");
    return v.front();
}

// ---------------------------------------------------------------------------

void cmd_simulate(const Options& o)
{
    const int n = single(o.n, "--n");
    const int r = single(o.r, "--r");
    if (o.ell.size() != 1)
        throw std::invalid_argument("--ell takes exactly one value here");
    harness::ExperimentSpec spec;
    spec.function = o.function;
    spec.ns = {n};
    spec.r = r;
    spec.k = o.k;
    spec.ells = {harness::EllSpec::parse(o.ell.front())};
    spec.runs = o.runs;
    spec.master_seed = o.seed;
    spec.cap = o.cap;
    spec.init = parse_init(o.init);
    const auto rows = harness::sweep(spec, 1);
    std::ostringstream s;
    harness::write_csv(rows, s);
    emit(s.str(), o.out);
}

void cmd_sweep(const Options& o)
{
    check_workers(o.workers);
    if (o.svg && o.out.empty())
        throw std::invalid_argument("--svg requires --out (the chart goes next to the CSV)");
    harness::ExperimentSpec spec;
    spec.function = o.function;
    spec.ns = o.n;
    spec.r = single(o.r, "--r");
    if (o.r_rule == "sqrt")
        spec.r_rule = harness::RRule::sqrt_n;
    else if (o.r_rule != "fixed")
        throw std::invalid_argument("--r-rule must be fixed or sqrt");
    spec.k = o.k;
    spec.ells.clear();
    for (const auto& e : o.ell)
        spec.ells.push_back(harness::EllSpec::parse(e));
    spec.runs = o.runs;
    spec.master_seed = o.seed;
    spec.cap = o.cap;
    spec.init = parse_init(o.init);
    spec.csv_path = o.out;
    const auto rows = harness::sweep(spec, o.workers);
    std::ostringstream s;
    harness::write_csv(rows, s);
    emit(s.str(), o.out);
    for (const auto& row : rows)
        if (row.all_censored())
            std::cerr << "warning: every run censored in cell n=" << row.n << " r=" << row.r << " ell=" << row.ell
                      << '\n';
    if (o.svg) {
        harness::PlotSpec ps;
        ps.title = o.function + " run time";
        ps.x_label = "ell";
        ps.y_label = "mean run time";
        ps.log_x = ps.log_y = true;
        emit(harness::render_svg(harness::sweep_series(rows, harness::SweepAxis::ell, harness::SweepAxis::n), ps),
             svg_path_for(o.out));
    }
}

void cmd_exact(const Options& o)
{
    const int n = single(o.n, "--n");
    const int r = single(o.r, "--r");
    if (o.ell.size() != 1)
        throw std::invalid_argument("--ell takes exactly one value here");
    const auto ell = harness::EllSpec::parse(o.ell.front()).resolve(n);
    oracle::Target target;
    if (o.function == "majority")
        target = oracle::Target::majority;
    else if (o.function == "plateau")
        target = oracle::Target::plateau;
    else
        throw std::invalid_argument("exact supports --function plateau or majority");
    fitness::PlateauParams{n, r}.validate();
    if (ell < 1 || ell > n)
        throw std::invalid_argument("ell=" + std::to_string(ell) + " outside [1, n]");
    const auto init = parse_init(o.init);
    oracle::LevelInit level;
    if (std::holds_alternative<init::Uniform>(init))
        level = oracle::level_init::Uniform{};
    else if (const auto* f = std::get_if<init::FixedOnes>(&init))
        level = oracle::level_init::FixedOnes{static_cast<int>(f->ones)};
    else
        throw std::invalid_argument("exact supports --init uniform or ones=J");

    const auto times = oracle::level_hitting_times(target, n, r, static_cast<int>(ell));
    std::ostringstream s;
    if (o.all_levels) {
        s << "ones,expected\n";
        for (std::size_t j = 0; j < times.by_ones.size(); ++j)
            s << j << ',' << format_double(times.by_ones[j]) << '\n';
    } else {
        const auto e = oracle::expected_under_init(times.by_ones, level);
        s << "function,n,r,ell,init,expected\n"
          << o.function << ',' << n << ',' << r << ',' << ell << ',' << o.init << ',' << format_double(e.value)
          << '\n';
    }
    if (times.overflow)
        std::cerr << "warning: expected hitting time exceeds the double range\n";
    emit(s.str(), o.out);
}

void cmd_bounds(const Options& o)
{
    std::ostringstream s;
    s << "n,r,lambda,delta,plateau_bound_center,asym_bound\n";
    for (int n : o.n)
        for (int r : o.r) {
            const auto b = theory::bounds(n, r);
            s << n << ',' << r << ',' << format_double(b.lambda) << ',' << format_double(b.drift_delta) << ','
              << format_double(b.plateau_bound_center.value) << ',' << format_double(b.asym_bound.value) << '\n';
        }
    emit(s.str(), o.out);
}

void cmd_drift_check(const Options& o)
{
    const int n = single(o.n, "--n");
    const int r = single(o.r, "--r");
    if (r < 1)
        throw std::invalid_argument("drift-check requires r >= 1");
    const auto rep = oracle::exact_drift_check(n, r, o.tolerance);
    std::ostringstream s;
    s << "m,drift,bound,slack,relative_slack\n";
    for (const auto& row : rep.rows)
        s << row.level << ',' << format_double(row.drift) << ',' << format_double(row.bound) << ','
          << format_double(row.slack) << ',' << format_double(row.relative_slack) << '\n';
    emit(s.str(), o.out);
    if (rep.overflow)
        std::cerr << "warning: some levels overflow binary64 and were not checked\n";
    if (!rep.ok)
        throw AssertionFailure("negative drift slack beyond tolerance");
}

void cmd_compliance(const Options& o)
{
    oracle::ComplianceMode mode;
    if (o.mode == "mutation")
        mode = oracle::ComplianceMode::mutation;
    else if (o.mode == "elitist")
        mode = oracle::ComplianceMode::elitist_onemax;
    else
        throw std::invalid_argument("--mode must be mutation or elitist");
    std::ostringstream s;
    s << "n,ell,mode,compliant,lower_level,upper_level,threshold,lower_prob,upper_prob\n";
    for (int n : o.n)
        for (const auto& e : o.ell) {
            const auto ell = harness::EllSpec::parse(e).resolve(n);
            const auto res = oracle::onemax_compliance_check(n, static_cast<int>(ell), mode);
            s << n << ',' << ell << ',' << o.mode << ',' << (res.compliant ? "true" : "false");
            if (const auto& v = res.first_violation)
                s << ',' << v->lower_level << ',' << v->upper_level << ',' << v->threshold << ','
                  << format_double(v->lower_prob) << ',' << format_double(v->upper_prob);
            else
                s << ",,,,,";
            s << '\n';
        }
    emit(s.str(), o.out);
}

void cmd_restarts(const Options& o)
{
    check_workers(o.workers);
    const int n = single(o.n, "--n");
    const int r = single(o.r, "--r");
    const auto rep = harness::restart_experiment(n, r, o.runs, o.seed, o.workers, o.cap);
    std::ostringstream s;
    s << "n,r,runs,censored,p0_hat,p0_stderr,retried,mean_U_given_L,U_stderr\n"
      << n << ',' << r << ',' << rep.runs << ',' << rep.censored << ',' << format_double(rep.p0_hat) << ','
      << format_double(rep.p0_stderr) << ',' << rep.retried << ','
      << (rep.mean_retries_given_retry ? format_double(*rep.mean_retries_given_retry) : "undefined") << ','
      << format_double(rep.retries_stderr) << '\n';
    emit(s.str(), o.out);
    if (o.no_check)
        return;
    if (std::fabs(rep.p0_hat - 0.5) > 3.0 * rep.p0_stderr)
        throw AssertionFailure("p0_hat outside 0.5 +- 3 SE");
    if (rep.mean_retries_given_retry && std::fabs(*rep.mean_retries_given_retry - 2.0) > 3.0 * rep.retries_stderr)
        throw AssertionFailure("mean U given L outside 2 +- 3 SE");
}

void cmd_wmodel(const Options& o)
{
    check_workers(o.workers);
    if (o.k < 2 || o.k % 2 != 0)
        throw std::invalid_argument("--k must be an even integer >= 2");
    const auto rep = harness::dilution_experiment(o.blocks, static_cast<std::size_t>(o.k), o.runs, o.seed, o.workers,
                                                  o.cap);
    std::ostringstream s;
    s << "blocks,k,runs,censored,mean,stderr,exact_block_time,ratio,ratio_stderr,block_bound\n"
      << rep.blocks << ',' << rep.width << ',' << rep.runs << ',' << rep.censored << ','
      << format_double(rep.mean_runtime) << ',' << format_double(rep.runtime_stderr) << ','
      << format_double(rep.exact_block_time) << ',' << format_double(rep.ratio) << ','
      << format_double(rep.ratio_stderr) << ',' << format_double(rep.block_bound) << '\n';
    emit(s.str(), o.out);
    if (!rep.block_bound_holds())
        throw AssertionFailure("exact block time exceeds 6 + k/2");
    if (!o.no_check && !rep.ratio_within(3.0))
        throw AssertionFailure("ratio outside 1 +- 3 SE");
}

void cmd_trajectory(const Options& o)
{
    if (o.svg && o.out.empty())
        throw std::invalid_argument("--svg requires --out (the chart goes next to the CSV)");
    const int n = single(o.n, "--n");
    const int r = single(o.r, "--r");
    if (o.ell.size() != 1)
        throw std::invalid_argument("--ell takes exactly one value here");
    const auto ell = harness::EllSpec::parse(o.ell.front()).resolve(n);
    fitness::PlateauParams{n, r}.validate();
    if (ell < 1 || ell > n)
        throw std::invalid_argument("ell=" + std::to_string(ell) + " outside [1, n]");
    const auto res = harness::trajectory_capture(n, r, static_cast<int>(ell), o.seed, o.cap);
    std::ostringstream s;
    s << "t,ones,fitness\n";
    for (const auto& p : res.trajectory)
        s << p.t << ',' << p.ones << ',' << p.fitness << '\n';
    emit(s.str(), o.out);
    if (res.censored())
        std::cerr << "warning: run censored after " << res.iterations << " iterations\n";
    if (o.svg) {
        harness::PlotSpec ps;
        ps.title = "RLS_" + std::to_string(ell) + " on Majority_" + std::to_string(r) + ", n=" + std::to_string(n);
        ps.x_label = "iteration";
        ps.y_label = "number of ones";
        emit(harness::render_svg({harness::trajectory_series(res.trajectory, "ell=" + std::to_string(ell))}, ps),
             svg_path_for(o.out));
    }
}

harness::SweepAxis parse_axis(const std::string& s, const char* flag)
{
    if (s == "n")
        return harness::SweepAxis::n;
    if (s == "r")
        return harness::SweepAxis::r;
    if (s == "ell")
        return harness::SweepAxis::ell;
    throw std::invalid_argument(std::string(flag) + " must be n, r or ell");
}

void cmd_plot(const Options& o)
{
    if (o.in.empty())
        throw std::invalid_argument("plot requires --in");
    std::vector<harness::SweepRow> rows;
    try {
        rows = harness::read_csv(o.in);
    } catch (const std::runtime_error& e) {
        throw IoFailure(e.what());
    }
    harness::PlotSpec ps;
    ps.title = o.title;
    ps.x_label = o.x_axis;
    ps.y_label = "mean run time";
    ps.log_x = o.log_x;
    ps.log_y = o.log_y;
    const auto series = harness::sweep_series(rows, parse_axis(o.x_axis, "--x"), parse_axis(o.group, "--group"));
    emit(harness::render_svg(series, ps), o.out);
}

// ---------------------------------------------------------------------------

struct Flags {
    bool function = false, n = false, n_list = false, r = false, r_list = false, ell = false, ell_list = false,
         k = false, blocks = false, runs = false, seed = false, cap = false, init = false, workers = false,
         svg = false;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& desc, Options& o, const Flags& f)
{
    auto* sub = app.add_subcommand(name, desc);
    if (f.function)
        sub->add_option("--function", o.function, "plateau, majority, onemax or onemax-neutral")
            ->capture_default_str();
    if (f.n) {
        const char* desc = !f.n_list   ? "Bit-string length"
                           : f.function ? "Bit-string lengths (block counts for onemax-neutral)"
                                        : "Bit-string lengths";
        auto* opt = sub->add_option("--n", o.n, desc);
        opt->default_str(std::to_string(o.n.front()));
        if (!f.n_list)
            opt->expected(1);
    }
    if (f.r) {
        auto* opt = sub->add_option("--r", o.r, f.r_list ? "Plateau radii" : "Plateau radius, threshold n/2+r");
        opt->default_str(std::to_string(o.r.front()));
        if (!f.r_list)
            opt->expected(1);
    }
    if (f.ell) {
        auto* opt = sub->add_option("--ell", o.ell, "Bits flipped per step: K, n, aN/b (e.g. 2n/3)");
        opt->default_str(o.ell.front());
        if (!f.ell_list)
            opt->expected(1);
    }
    if (f.k)
        sub->add_option("--k", o.k, "Block width")->capture_default_str();
    if (f.blocks)
        sub->add_option("--blocks", o.blocks, "Number of blocks")->capture_default_str();
    if (f.runs)
        sub->add_option("--runs", o.runs, "Independent runs")->capture_default_str();
    if (f.seed)
        sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    if (f.cap)
        sub->add_option("--cap", o.cap, "Iteration cap per run")->capture_default_str();
    if (f.init)
        sub->add_option("--init", o.init, "uniform, uniform-nonopt, ones=J or point=BITS")->capture_default_str();
    if (f.workers)
        sub->add_option("--workers", o.workers, "Worker threads (default: all hardware threads)");
    if (f.svg)
        sub->add_flag("--svg", o.svg, "Also write an SVG chart next to --out");
    sub->add_option("--out", o.out, "Output path (default: standard output)")->type_name("PATH");
    return sub;
}

int run_cli(int argc, char** argv)
{
    CLI::App app{"Random local search on plateau functions: simulation, bounds and exact oracles"};
    app.name("plateau_lab");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI file with [subcommand] sections; command-line flags override it")
        ->type_name("PATH");

    // One option set per subcommand, so each can carry its own defaults.
    std::deque<Options> options;
    std::map<CLI::App*, std::function<void()>> handlers;

    {
        auto& o = options.emplace_back();
        Flags f;
        f.function = f.n = f.r = f.ell = f.k = f.runs = f.seed = f.cap = f.init = true;
        auto* sub = add_command(app, "simulate", "Run RLS_ell repeatedly on one instance and summarize", o, f);
        handlers[sub] = [&o] { cmd_simulate(o); };
    }
    {
        auto& o = options.emplace_back();
        Flags f;
        f.function = f.n = f.n_list = f.r = f.ell = f.ell_list = f.k = f.runs = f.seed = f.cap = f.init = f.workers
            = f.svg = true;
        auto* sub = add_command(app, "sweep", "Run a grid of (n, ell) cells and write the summary CSV", o, f);
        sub->add_option("--r-rule", o.r_rule, "fixed (use --r) or sqrt (r = floor(sqrt n))")->capture_default_str();
        handlers[sub] = [&o] { cmd_sweep(o); };
    }
    {
        auto& o = options.emplace_back();
        Flags f;
        f.function = f.n = f.r = f.ell = f.init = true;
        auto* sub = add_command(app, "exact", "Exact expected run time from the level Markov chain", o, f);
        sub->add_flag("--all-levels", o.all_levels, "Print E(j) for every initial ones count j");
        handlers[sub] = [&o] { cmd_exact(o); };
    }
    {
        auto& o = options.emplace_back();
        Flags f;
        f.n = f.n_list = f.r = f.r_list = true;
        auto* sub = add_command(app, "bounds", "Closed-form potential base and run-time bounds", o, f);
        handlers[sub] = [&o] { cmd_bounds(o); };
    }
    {
        auto& o = options.emplace_back();
        Flags f;
        f.n = f.r = true;
        auto* sub = add_command(app, "drift-check", "Exact drift of the potential against its lower bound", o, f);
        sub->add_option("--tolerance", o.tolerance, "Allowed relative deficit")->capture_default_str();
        handlers[sub] = [&o] { cmd_drift_check(o); };
    }
    {
        auto& o = options.emplace_back();
        Flags f;
        o.n = {12};
        f.n = f.n_list = f.ell = f.ell_list = true;
        auto* sub = add_command(app, "compliance", "Exhaustive OneMax-compliance check of RLS_ell", o, f);
        sub->add_option("--mode", o.mode, "mutation (bare offspring) or elitist (after OneMax selection)")
            ->capture_default_str();
        handlers[sub] = [&o] { cmd_compliance(o); };
    }
    {
        auto& o = options.emplace_back();
        Flags f;
        o.r = {5};
        f.n = f.r = f.runs = f.seed = f.cap = f.workers = true;
        auto* sub = add_command(app, "restarts", "Restart decomposition of RLS on Majority_r", o, f);
        sub->add_flag("--no-check", o.no_check, "Do not assert p0 = 1/2 and E[U | L] = 2 within 3 SE");
        handlers[sub] = [&o] { cmd_restarts(o); };
    }
    {
        auto& o = options.emplace_back();
        Flags f;
        o.k = 10;
        f.k = f.blocks = f.runs = f.seed = f.cap = f.workers = true;
        auto* sub = add_command(app, "wmodel", "Dilution of one neutral block inside blocks*k bits", o, f);
        sub->add_flag("--no-check", o.no_check, "Do not assert the ratio is 1 within 3 SE");
        handlers[sub] = [&o] { cmd_wmodel(o); };
    }
    {
        auto& o = options.emplace_back();
        Flags f;
        f.n = f.r = f.ell = f.seed = f.cap = f.svg = true;
        auto* sub = add_command(app, "trajectory", "Log the ones count of one run on Majority_r", o, f);
        handlers[sub] = [&o] { cmd_trajectory(o); };
    }
    {
        auto& o = options.emplace_back();
        Flags f;
        auto* sub = add_command(app, "plot", "Render a sweep CSV as an SVG chart", o, f);
        sub->add_option("--in", o.in, "Sweep CSV to read")->type_name("PATH")->required();
        sub->add_option("--x", o.x_axis, "Horizontal axis: n, r or ell")->capture_default_str();
        sub->add_option("--group", o.group, "One line per value of: n, r or ell")->capture_default_str();
        sub->add_flag("--log-x", o.log_x, "Logarithmic horizontal axis");
        sub->add_flag("--log-y", o.log_y, "Logarithmic vertical axis");
        sub->add_option("--title", o.title, "Chart title");
        handlers[sub] = [&o] { cmd_plot(o); };
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    for (auto* sub : app.get_subcommands()) {
        try {
            handlers.at(sub)();
        } catch (const AssertionFailure& e) {
            std::cerr << "assertion failed: " << e.what() << '\n';
            return exit_assert;
        } catch (const IoFailure& e) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_io;
        } catch (const std::logic_error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_usage;
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_io;
        }
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
