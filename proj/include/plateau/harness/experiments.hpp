#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "../core/rng.hpp"
#include "../core/sampling.hpp"
#include "../ea.hpp"
#include "../fitness.hpp"
#include "../oracle/checks.hpp"
#include "../theory.hpp"
#include "format.hpp"
#include "parallel.hpp"
#include "stats.hpp"

namespace plateau::harness {

/// Mutation strength given either as a constant ("25") or as a multiple
/// of n ("n", "n/2", "2n/3"), resolved per cell as floor(num * n / den).
struct EllSpec {
    std::int64_t constant = 1;  // used when scaled is false
    bool scaled = false;
    std::int64_t num = 1;
    std::int64_t den = 1;

    static EllSpec parse(std::string_view s)
    {
        if (s.empty())
            throw std::invalid_argument("empty ell value");
        const auto npos = s.find('n');
        if (npos == std::string_view::npos) {
            EllSpec e;
            e.constant = parse_int<std::int64_t>(s);
            return e;
        }
        EllSpec e;
        e.scaled = true;
        if (npos > 0)
            e.num = parse_int<std::int64_t>(s.substr(0, npos));
        auto rest = s.substr(npos + 1);
        if (!rest.empty()) {
            if (rest.front() != '/')
                throw std::invalid_argument("bad ell value '" + std::string(s) + "' (expected K, n, aN/b)");
            e.den = parse_int<std::int64_t>(rest.substr(1));
        }
        if (e.num <= 0 || e.den <= 0)
            throw std::invalid_argument("bad ell value '" + std::string(s) + "'");
        return e;
    }

    [[nodiscard]] std::int64_t resolve(std::int64_t n) const { return scaled ? num * n / den : constant; }

    [[nodiscard]] std::string str() const
    {
        if (!scaled)
            return std::to_string(constant);
        std::string s = num == 1 ? "n" : std::to_string(num) + "n";
        if (den != 1)
            s += "/" + std::to_string(den);
        return s;
    }
};

enum class RRule { fixed, sqrt_n };

struct ExperimentSpec {
    std::string function = "majority";  // plateau | majority | onemax | onemax-neutral
    std::vector<int> ns{100};            // for onemax-neutral: block counts
    std::vector<EllSpec> ells{EllSpec{}};
    RRule r_rule = RRule::fixed;
    int r = 1;
    int k = 2;  // block width for onemax-neutral
    std::size_t runs = 100;
    std::uint64_t master_seed = 1;
    std::uint64_t cap = ea::default_max_iters;
    InitDistribution init = init::Uniform{};
    std::string csv_path;  // empty: standard output
    std::string svg_path;  // empty: no chart

    [[nodiscard]] int r_for(int n) const
    {
        return r_rule == RRule::fixed ? r : static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    }

    void validate() const
    {
        if (runs < 1)
            throw std::invalid_argument("sweep: runs must be >= 1");
        if (ns.empty() || ells.empty())
            throw std::invalid_argument("sweep: need at least one n and one ell");
        if (cap < 1)
            throw std::invalid_argument("sweep: cap must be >= 1");
    }
};

struct SweepRow {
    int n;
    int r;
    int ell;
    CellStats stats;

    [[nodiscard]] bool all_censored() const noexcept { return stats.runs > 0 && stats.censored == stats.runs; }

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Master seed of one cell; run i of the cell uses stream i. Depends only
/// on the cell parameters, never on scheduling.
inline std::uint64_t cell_seed(std::uint64_t master, int n, int r, int ell, int k)
{
    std::uint64_t h = mix64(master);
    for (std::int64_t v : {std::int64_t{n}, std::int64_t{r}, std::int64_t{ell}, std::int64_t{k}})
        h = mix64(h ^ static_cast<std::uint64_t>(v));
    return h;
}

/// Runs every (n, ell) cell and summarizes the run times. Throws on the
/// first invalid cell before any simulation starts.
inline std::vector<SweepRow> sweep(const ExperimentSpec& spec, unsigned workers = 1)
{
    spec.validate();
    struct Cell {
        int n, r, ell;
        fitness::FitnessFunction f;
    };
    std::vector<Cell> cells;
    for (int n : spec.ns) {
        const int r = spec.r_for(n);
        auto f = fitness::make(spec.function, n, r, spec.k);
        for (const auto& e : spec.ells) {
            const auto ell = e.resolve(static_cast<std::int64_t>(f.arity()));
            if (ell < 1 || ell > static_cast<std::int64_t>(f.arity()))
                throw std::invalid_argument("sweep: ell=" + std::to_string(ell) + " (from '" + e.str()
                                            + "') outside [1, " + std::to_string(f.arity()) + "] for n="
                                            + std::to_string(n));
            cells.push_back({n, r, static_cast<int>(ell), f});
        }
    }

    std::vector<SweepRow> rows;
    for (const auto& cell : cells) {
        ea::RunConfig cfg{cell.f};
        cfg.mutation = {static_cast<std::size_t>(cell.ell)};
        cfg.init = spec.init;
        cfg.master_seed = cell_seed(spec.master_seed, cell.n, cell.r, cell.ell, spec.k);
        cfg.max_iters = spec.cap;
        ea::validate(cfg);
        std::vector<std::optional<std::uint64_t>> times(spec.runs);
        parallel_for(spec.runs, workers, [&](std::size_t i) {
            auto c = cfg;
            c.run_index = i;
            times[i] = ea::run(c).runtime;
        });
        std::vector<double> done;
        std::size_t censored = 0;
        for (const auto& t : times) {
            if (t)
                done.push_back(static_cast<double>(*t));
            else
                ++censored;
        }
        rows.push_back({cell.n, cell.r, cell.ell, summarize(std::move(done), censored)});
    }
    return rows;
}

// ---------------------------------------------------------------------------

struct RestartReport {
    int n = 0;
    int r = 0;
    std::size_t runs = 0;
    std::size_t censored = 0;
    double p0_hat = 0.0;
    double p0_stderr = 0.0;
    std::size_t retried = 0;                       // runs with U >= 1
    std::optional<double> mean_retries_given_retry;  // empty when no run retried
    double retries_stderr = 0.0;
    bool interleaving_ok = true;  // T'_i <= T_i < T'_{i+1} on every run
};

/// RLS on Majority_r from uniform initialization, instrumented with the
/// restart decomposition. Censored runs are excluded from both estimates.
inline RestartReport restart_experiment(int n, int r, std::size_t runs, std::uint64_t seed, unsigned workers = 1,
                                        std::uint64_t cap = ea::default_max_iters)
{
    if (runs < 1)
        throw std::invalid_argument("restarts: runs must be >= 1");
    if (r < 1)
        throw std::invalid_argument("restarts: r must be >= 1");
    ea::RunConfig cfg{fitness::majority({n, r})};
    cfg.restart_stats = true;
    cfg.master_seed = cell_seed(seed, n, r, 1, 0);
    cfg.max_iters = cap;
    ea::validate(cfg);

    std::vector<ea::RestartStats> stats(runs);
    parallel_for(runs, workers, [&](std::size_t i) {
        auto c = cfg;
        c.run_index = i;
        stats[i] = *ea::run(c).restart;
    });

    RestartReport rep;
    rep.n = n;
    rep.r = r;
    rep.runs = runs;
    std::size_t first_ok = 0;
    std::vector<double> retries;
    for (const auto& s : stats) {
        if (s.partial) {
            ++rep.censored;
            continue;
        }
        for (std::size_t i = 0; i < s.plateau_hits.size(); ++i) {
            if (i < s.returns.size() && s.returns[i] < s.plateau_hits[i])
                rep.interleaving_ok = false;
            if (i + 1 < s.plateau_hits.size() && (i >= s.returns.size() || s.returns[i] >= s.plateau_hits[i + 1]))
                rep.interleaving_ok = false;
        }
        if (s.first_hit_majority)
            ++first_ok;
        if (s.retried)
            retries.push_back(static_cast<double>(s.retries));
    }
    const double m = static_cast<double>(runs - rep.censored);
    if (m > 0) {
        rep.p0_hat = static_cast<double>(first_ok) / m;
        rep.p0_stderr = std::sqrt(rep.p0_hat * (1.0 - rep.p0_hat) / m);
    }
    rep.retried = retries.size();
    if (!retries.empty()) {
        const auto ms = mean_and_stderr(retries);
        rep.mean_retries_given_retry = ms.mean;
        rep.retries_stderr = ms.stderr_mean;
    }
    return rep;
}

// ---------------------------------------------------------------------------

struct DilutionReport {
    std::size_t blocks = 0;
    std::size_t width = 0;
    std::size_t runs = 0;
    std::size_t censored = 0;
    double mean_runtime = 0.0;    // T-hat
    double runtime_stderr = 0.0;
    double exact_block_time = 0.0;  // E[S]
    double ratio = 0.0;             // T-hat / (blocks E[S])
    double ratio_stderr = 0.0;
    double block_bound = 0.0;       // 6 + k/2
    [[nodiscard]] bool block_bound_holds() const { return exact_block_time <= block_bound; }
    [[nodiscard]] bool ratio_within(double n_se) const { return std::fabs(ratio - 1.0) <= n_se * ratio_stderr; }
};

/// Exact E[S]: RLS on Majority_1 over k bits from uniform initialization.
inline double exact_block_time(int k)
{
    const auto times = oracle::level_hitting_times(oracle::Target::majority, k, 1, 1);
    return oracle::expected_under_init(times.by_ones, oracle::level_init::Uniform{}).value;
}

/// RLS on the single-block sub-function g_1 embedded in blocks*k bits,
/// uniform initialization. The run time should be blocks * E[S].
inline DilutionReport dilution_experiment(std::size_t blocks, std::size_t k, std::size_t runs, std::uint64_t seed,
                                          unsigned workers = 1, std::uint64_t cap = ea::default_max_iters)
{
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("wmodel: k must be an even integer >= 2");
    if (blocks < 1)
        throw std::invalid_argument("wmodel: blocks must be >= 1");
    if (runs < 1)
        throw std::invalid_argument("wmodel: runs must be >= 1");
    const fitness::NeutralityParams np{blocks, k, fitness::onemax(blocks)};
    ea::RunConfig cfg{fitness::separable_block_fitness(1, np)};
    cfg.master_seed = cell_seed(seed, static_cast<int>(blocks), 1, 1, static_cast<int>(k));
    cfg.max_iters = cap;

    std::vector<std::optional<std::uint64_t>> times(runs);
    parallel_for(runs, workers, [&](std::size_t i) {
        auto c = cfg;
        c.run_index = i;
        times[i] = ea::run(c).runtime;
    });
    DilutionReport rep;
    rep.blocks = blocks;
    rep.width = k;
    rep.runs = runs;
    std::vector<double> done;
    for (const auto& t : times) {
        if (t)
            done.push_back(static_cast<double>(*t));
        else
            ++rep.censored;
    }
    const auto ms = mean_and_stderr(done);
    rep.mean_runtime = ms.mean;
    rep.runtime_stderr = ms.stderr_mean;
    rep.exact_block_time = exact_block_time(static_cast<int>(k));
    const double scale = static_cast<double>(blocks) * rep.exact_block_time;
    rep.ratio = rep.mean_runtime / scale;
    rep.ratio_stderr = rep.runtime_stderr / scale;
    rep.block_bound = theory::block_bound(static_cast<int>(k));
    return rep;
}

// ---------------------------------------------------------------------------

/// One fully logged run of RLS_ell on Majority_r from a uniformly chosen
/// non-optimal string.
inline ea::RunResult trajectory_capture(int n, int r, int ell, std::uint64_t seed,
                                        std::uint64_t cap = ea::default_max_iters, std::uint64_t run_index = 0)
{
    ea::RunConfig cfg{fitness::majority({n, r})};
    cfg.mutation = {static_cast<std::size_t>(ell)};
    cfg.init = init::UniformNonOptimal{};
    cfg.master_seed = seed;
    cfg.run_index = run_index;
    cfg.max_iters = cap;
    cfg.trajectory = true;
    return ea::run(cfg);
}

} // namespace plateau::harness
