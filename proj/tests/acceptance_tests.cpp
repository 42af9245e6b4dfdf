// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Criteria 1-6 run in process; 7 and 8 drive the dcnet binary named
// by the DCNET_CLI environment variable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "dcnet/dcor.hpp"
#include "dcnet/estimator.hpp"
#include "dcnet/graph.hpp"
#include "dcnet/matrix.hpp"
#include "dcnet/pipeline.hpp"
#include "dcnet/rng.hpp"
#include "dcnet/simulate.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::vector<double> mixed_sample(std::size_t n, dcnet::rng::Generator& g, int flavor) {
    std::vector<double> x(n);
    for (auto& v : x) {
        switch (flavor % 3) {
            case 0: v = g.normal(); break;
            case 1: v = g.uniform(); break;
            // heavy tail with finite mean (Pareto, alpha = 1.2)
            default: v = std::pow(1.0 - g.uniform(), -1.0 / 1.2); break;
        }
    }
    return x;
}

// ---- 1. dcor_fast vs the definitional path, 200 mixed random pairs --------

Check criterion1() {
    Check c;
    dcnet::rng::Generator g(101);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 2 + g.uniform_int(49);
        const auto x = mixed_sample(n, g, rep);
        const auto y = mixed_sample(n, g, rep + 1);
        const double slow = dcnet::dcor(x, y).dcor;
        const double fast = dcnet::dcor_fast(x, y).dcor;
        c.require(std::abs(slow - fast) < 1e-10,
                  "pair " + std::to_string(rep) + ": |definitional - fast| = " +
                      std::to_string(std::abs(slow - fast)));
    }
    return c;
}

// ---- 2. dcor axioms over >= 1000 randomized cases --------------------------

Check criterion2() {
    Check c;
    dcnet::rng::Generator g(202);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 2 + g.uniform_int(39);
        const auto x = mixed_sample(n, g, rep);
        const auto y = mixed_sample(n, g, rep + 1);

        c.require(dcnet::dcor_fast(x, x).dcor == 1.0, "dcor(x,x) != 1");

        const std::vector<double> constant(n, 3.25);
        c.require(dcnet::dcor_fast(x, constant).dcor == 0.0, "dcor(x,const) != 0");
        c.require(dcnet::dcor_fast(constant, constant).dcor == 0.0, "dcor(const,const) != 0");

        const double xy = dcnet::dcor_fast(x, y).dcor;
        const double yx = dcnet::dcor_fast(y, x).dcor;
        c.require(xy == yx, "symmetry not exact");
        c.require(xy >= 0.0 && xy <= 1.0, "dcor outside [0,1]");

        const double a = g.uniform(-5.0, 5.0);
        const double b = g.uniform(0.05, 20.0);
        std::vector<double> xt(n);
        for (std::size_t i = 0; i < n; ++i) xt[i] = a + b * x[i];
        c.require(std::abs(dcnet::dcor_fast(xt, y).dcor - xy) < 1e-9,
                  "affine invariance beyond 1e-9");
        if (!c.ok) break;
    }
    return c;
}

// ---- 3. partial correlations vs the residual oracle ------------------------

Check criterion3() {
    Check c;
    dcnet::rng::Generator g(303);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t p = rep % 2 == 0 ? 4 : 6;
        const dcnet::Matrix r = oracle::random_pd_correlation(p, g);
        const auto inv = dcnet::invert(r, 1e-8, 1e-2);
        const auto pc = dcnet::partial_correlations(inv.inverse, inv.ridge_applied);
        for (std::size_t i = 0; i < p && c.ok; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) {
                const double want = oracle::partial_corr_residual(r, i, j);
                const double got = pc.entries.at(i, j);
                c.require(std::abs(got - want) < 1e-8,
                          "matrix " + std::to_string(rep) + " entry (" + std::to_string(i) +
                              "," + std::to_string(j) + "): |" + std::to_string(got) +
                              " - " + std::to_string(want) + "| >= 1e-8");
                if (!c.ok) break;
            }
        }
    }
    return c;
}

// ---- 4. invertibility split at n = 20 --------------------------------------

Check criterion4() {
    Check c;
    const std::vector<std::size_t> dims = {10, 20, 30, 50};
    const auto rows = dcnet::determinant_experiment(dims, 20, 10, 404);

    std::size_t dcor_singular_total = 0;
    for (const auto& row : rows) {
        dcor_singular_total += row.dcor_singular;
        if (row.p <= 19)
            c.require(row.pearson_singular == 0,
                      "Pearson singular at p=" + std::to_string(row.p) + " <= n-1");
        if (row.p > 20)
            c.require(row.pearson_singular == 10,
                      "Pearson non-singular at p=" + std::to_string(row.p) + " > n");
    }
    // dcor log-det finite in >= 90% of the 40 runs
    c.require(dcor_singular_total <= 4,
              "dcor matrix singular in " + std::to_string(dcor_singular_total) + "/40 runs");
    return c;
}

// ---- 5. structure recovery surrogate ---------------------------------------

Check criterion5() {
    Check c;
    const int seeds = 20;
    const double pairs = 20.0 * 19.0 / 2.0;

    double mean_h100 = 0.0, mean_h1000 = 0.0, mean_baseline = 0.0;
    for (int s = 0; s < seeds; ++s) {
        dcnet::ErdosRenyiSpec er{20, 3.0, 500 + std::uint64_t(s)};
        dcnet::LinearDataSpec ls;
        ls.seed = 900 + std::uint64_t(s);

        ls.n = 100;
        mean_h100 += static_cast<double>(dcnet::recovery_experiment(er, ls).hamming);
        ls.n = 1000;
        const auto rep = dcnet::recovery_experiment(er, ls);
        mean_h1000 += static_cast<double>(rep.hamming);

        // uniformly random graph with the same edge count: overlap is
        // hypergeometric, so E[hamming] = 2k(1 - k/M)
        const double k = static_cast<double>(rep.true_edge_count);
        mean_baseline += 2.0 * k * (1.0 - k / pairs);
    }
    mean_h100 /= seeds;
    mean_h1000 /= seeds;
    mean_baseline /= seeds;

    c.require(mean_h1000 <= mean_h100,
              "mean hamming grew with n: " + std::to_string(mean_h1000) + " > " +
                  std::to_string(mean_h100));
    c.require(mean_h1000 < mean_baseline,
              "mean hamming " + std::to_string(mean_h1000) +
                  " not below random baseline " + std::to_string(mean_baseline));
    c.detail = "n=100: " + std::to_string(mean_h100) + ", n=1000: " +
               std::to_string(mean_h1000) + ", baseline: " + std::to_string(mean_baseline);
    return c;
}

// ---- 6. Erdos-Renyi calibration --------------------------------------------

Check criterion6() {
    Check c;
    double sum = 0.0;
    for (int seed = 0; seed < 200; ++seed)
        sum += static_cast<double>(
            dcnet::erdos_renyi({50, 3.0, std::uint64_t(seed)}).edge_count());
    const double mean = sum / 200.0;
    // one draw is Binomial(1225, 0.06): sigma ~= 8.312
    const double sigma = std::sqrt(1225.0 * 0.06 * 0.94);
    c.require(std::abs(mean - 75.0) <= 3.0 * sigma,
              "mean edge count " + std::to_string(mean) + " further than 3 sigma from 75");
    c.detail = "mean " + std::to_string(mean) + ", 3 sigma " + std::to_string(3.0 * sigma);
    return c;
}

// ---- subprocess helpers for criteria 7 and 8 --------------------------------

std::string g_cli;

int run_cli(const std::string& args, const fs::path& cwd, const std::string& env = "") {
    const std::string cmd = "cd \"" + cwd.string() + "\" && " + env + " \"" + g_cli + "\" " +
                            args + " > /dev/null 2> .stderr";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path make_sandbox(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() /
                         ("dcnet_acc_" + std::to_string(::getpid()) + "_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// ---- 7. end-to-end byte determinism across runs and thread counts ----------

Check criterion7() {
    Check c;
    const std::vector<std::string> envs = {"OMP_NUM_THREADS=1", "OMP_NUM_THREADS=1",
                                           "OMP_NUM_THREADS=4"};
    std::vector<fs::path> dirs;
    for (std::size_t run = 0; run < envs.size(); ++run) {
        const fs::path dir = make_sandbox("det" + std::to_string(run));
        dirs.push_back(dir);
        int rc = run_cli("simulate --nodes 15 --avg-degree 2 --samples 120 --seed 7 "
                         "--output-dir sim",
                         dir, envs[run]);
        c.require(rc == 0, "simulate failed: " + slurp(dir / ".stderr"));
        rc = run_cli("estimate --input sim/data_seed7.csv --edges 14 --output-dir est", dir,
                     envs[run]);
        c.require(rc == 0, "estimate failed: " + slurp(dir / ".stderr"));
        rc = run_cli("eval --truth sim/truth_seed7.edges --estimated est/graph.edges "
                     "--nodes 15 --output-dir ev",
                     dir, envs[run]);
        c.require(rc == 0, "eval failed: " + slurp(dir / ".stderr"));
        if (!c.ok) return c;
    }

    const std::vector<std::string> files = {
        "sim/truth_seed7.edges", "sim/data_seed7.csv", "sim/summary.json",
        "est/dcor_matrix.csv",   "est/partial_matrix.csv", "est/graph.edges",
        "est/graph.dot",         "est/summary.json",    "ev/summary.json"};
    for (std::size_t run = 1; run < dirs.size(); ++run) {
        for (const auto& f : files) {
            c.require(slurp(dirs[0] / f) == slurp(dirs[run] / f),
                      f + " differs between run 0 and run " + std::to_string(run) + " (" +
                          envs[run] + ")");
        }
    }
    for (const auto& d : dirs) fs::remove_all(d);
    return c;
}

// ---- 8. preprocessing round-trip -------------------------------------------

Check criterion8() {
    Check c;
    const fs::path dir = make_sandbox("prices");

    // synthetic positive price table: 1258 time points x 30 tickers
    dcnet::rng::Generator g(808);
    std::string csv;
    for (std::size_t j = 0; j < 30; ++j) csv += (j ? "," : "") + ("S" + std::to_string(j));
    csv += '\n';
    std::vector<double> price(30, 100.0);
    for (std::size_t t = 0; t < 1258; ++t) {
        for (std::size_t j = 0; j < 30; ++j) {
            price[j] *= std::exp(g.normal(0.0, 0.02));
            csv += (j ? "," : "") + dcnet::format_double17(price[j]);
        }
        csv += '\n';
    }
    {
        std::ofstream f(dir / "prices.csv", std::ios::binary);
        f << csv;
    }

    int rc = run_cli("transform --input prices.csv --header --output-dir t", dir);
    c.require(rc == 0, "transform failed: " + slurp(dir / ".stderr"));
    if (c.ok) {
        const dcnet::Dataset out =
            dcnet::read_csv((dir / "t/transformed.csv").string(), true, ',');
        c.require(out.n == 1257, "expected 1257 output rows, got " + std::to_string(out.n));
        c.require(out.p == 30, "expected 30 columns");
    }
    if (c.ok) {
        rc = run_cli("estimate --input t/transformed.csv --header --edges 40 "
                     "--output-dir est",
                     dir);
        c.require(rc == 0, "estimate failed: " + slurp(dir / ".stderr"));
        if (c.ok) {
            const dcnet::Adjacency graph =
                dcnet::read_edge_list((dir / "est/graph.edges").string(), 30);
            c.require(graph.edge_count() == 40, "expected 40 edges");
        }
    }
    fs::remove_all(dir);
    return c;
}

struct Criterion {
    const char* label;
    double budget_seconds;
    std::function<Check()> fn;
};

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("DCNET_CLI")) g_cli = env;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") g_cli = argv[i + 1];
    if (g_cli.empty()) {
        std::fprintf(stderr, "set DCNET_CLI or pass --cli <path to dcnet binary>\n");
        return 2;
    }

    const std::vector<Criterion> criteria = {
        {"1 oracle equivalence (dcor_fast vs definitional, 200 pairs)", 10.0, criterion1},
        {"2 dcor axioms (1000 randomized cases)", 30.0, criterion2},
        {"3 partial correlations vs residual oracle (100 matrices)", 60.0, criterion3},
        {"4 invertibility split, Pearson vs dcor (n=20)", 120.0, criterion4},
        {"5 structure recovery vs random baseline (p=20)", 300.0, criterion5},
        {"6 Erdos-Renyi calibration (200 seeds)", 60.0, criterion6},
        {"7 end-to-end byte determinism across thread counts", 120.0, criterion7},
        {"8 preprocessing round-trip (1258x30 prices)", 120.0, criterion8},
    };

    int failures = 0;
    for (const auto& crit : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = crit.fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        const double elapsed = std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
        if (elapsed > crit.budget_seconds) {
            c.ok = false;
            c.detail = "exceeded " + std::to_string(crit.budget_seconds) + " s budget";
        }
        std::printf("[%s] criterion %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", crit.label,
                    elapsed, c.detail.empty() ? "" : ": ", c.detail.c_str());
        std::fflush(stdout);
        if (!c.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
