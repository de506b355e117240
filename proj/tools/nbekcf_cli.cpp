#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbekcf/acsii.hpp"
#include "nbekcf/ccim.hpp"
#include "nbekcf/eval.hpp"
#include "nbekcf/io.hpp"
#include "nbekcf/oracle.hpp"
#include "nbekcf/selftest.hpp"
#include "nbekcf/tracker.hpp"

namespace {

struct TrackArgs {
    std::string seq;
    std::string init;
    std::string gt;
    std::string out = "results.csv";
    std::string metrics = "metrics.json";
    double sigma = 4.0;
    double lambda = 1e-4;
    double gamma = 0.01;
    int cell = 4;
    double search_factor = 3.0;
    int scale_steps = 1;
    std::string kernel = "gaussian";
};

struct BenchArgs {
    int m = 15;
    int n = 20;
    int rows = 60;
    int cols = 60;
    int d = 41;
    int iters = 10;
    std::string method = "all";
    std::uint64_t seed = 42;
};

struct SelftestArgs {
    int cases = 100;
    std::uint64_t seed = 42;
};

bool parse_box(const std::string& text, nbekcf::BoundingBox& box) {
    std::string cleaned = text;
    for (char& c : cleaned) {
        if (c == ',') {
            c = ' ';
        }
    }
    std::istringstream fields(cleaned);
    std::string extra;
    if (!(fields >> box.x >> box.y >> box.w >> box.h) || (fields >> extra)) {
        return false;
    }
    return box.w > 0.0 && box.h > 0.0;
}

int run_track(const TrackArgs& args) {
    nbekcf::BoundingBox init;
    if (!parse_box(args.init, init)) {
        std::cerr << "error: --init expects x,y,w,h with positive size\n";
        return 2;
    }

    nbekcf::TrackerConfig cfg;
    cfg.cell_size = args.cell;
    cfg.search_factor = args.search_factor;
    cfg.lambda = args.lambda;
    cfg.gamma = args.gamma;
    cfg.scale_steps = args.scale_steps;
    cfg.kernel.sigma = args.sigma;
    if (args.kernel == "gaussian") {
        cfg.kernel.kind = nbekcf::KernelKind::gaussian;
    } else if (args.kernel == "linear") {
        cfg.kernel.kind = nbekcf::KernelKind::linear;
    } else {
        cfg.kernel.kind = nbekcf::KernelKind::polynomial;
    }

    const std::vector<std::string> paths = nbekcf::list_sequence_frames(args.seq);
    if (paths.empty()) {
        throw std::runtime_error(args.seq + ": no .pgm/.ppm frames found");
    }
    std::vector<nbekcf::GrayImage> frames;
    frames.reserve(paths.size());
    for (std::size_t t = 0; t < paths.size(); ++t) {
        try {
            frames.push_back(nbekcf::load_image(paths[t]));
        } catch (const std::exception& e) {
            throw std::runtime_error("frame " + std::to_string(t + 1) + ": " + e.what());
        }
    }

    const auto start = std::chrono::steady_clock::now();
    const std::vector<nbekcf::BoundingBox> boxes = nbekcf::track_sequence(frames, init, cfg);
    const auto stop = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(stop - start).count();

    nbekcf::write_results(args.out, boxes);

    if (!args.gt.empty()) {
        const std::vector<nbekcf::BoundingBox> gt = nbekcf::load_groundtruth(args.gt);
        if (gt.size() != boxes.size()) {
            throw std::runtime_error("ground truth has " + std::to_string(gt.size()) +
                                     " boxes but the sequence has " +
                                     std::to_string(boxes.size()) + " frames");
        }
        const nbekcf::TrackingMetrics metrics = nbekcf::summarize(boxes, gt);
        nbekcf::write_metrics(args.metrics, metrics);
        std::printf("mean center error: %.3f px, mean overlap: %.3f, auc: %.3f\n",
                    metrics.mean_center_error, metrics.mean_overlap, metrics.auc);
    }

    const double fps = seconds > 0.0 ? static_cast<double>(frames.size()) / seconds : 0.0;
    std::printf("mean fps: %.3f\n", fps);
    return 0;
}

double median_ms(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t s = samples.size();
    return s % 2 == 1 ? samples[s / 2] : 0.5 * (samples[s / 2 - 1] + samples[s / 2]);
}

// Keeps benchmarked results observable so the calls cannot be elided.
volatile double g_bench_sink = 0.0;

template <typename Fn>
double time_method(int iters, Fn&& fn) {
    fn();  // warmup
    std::vector<double> samples;
    samples.reserve(iters);
    for (int i = 0; i < iters; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return median_ms(std::move(samples));
}

int run_bench(const BenchArgs& args) {
    if (args.m < 1 || args.n < 1 || args.m > args.rows || args.n > args.cols || args.d < 1) {
        std::cerr << "error: need 1 <= m <= M, 1 <= n <= N, D >= 1\n";
        return 2;
    }
    if (args.iters < 1) {
        std::cerr << "error: --iters must be >= 1\n";
        return 2;
    }
    const bool brute_feasible = args.rows <= 16 && args.cols <= 16;
    if (args.method == "brute" && !brute_feasible) {
        std::cerr << "error: --method brute requires M <= 16 and N <= 16\n";
        return 2;
    }

    std::mt19937_64 rng(args.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto fill = [&](int rows, int cols, int d) {
        std::vector<double> data(static_cast<std::size_t>(rows) * cols * d);
        for (double& v : data) {
            v = dist(rng);
        }
        return nbekcf::make_feature_map(rows, cols, d, std::move(data));
    };
    const nbekcf::FeatureMap x0 = fill(args.m, args.n, args.d);
    const nbekcf::FeatureMap z = fill(args.rows, args.cols, args.d);

    const bool want_ccim = args.method == "ccim" || args.method == "all";
    const bool want_acsii = args.method == "acsii" || args.method == "all";
    const bool want_brute = args.method == "brute" || (args.method == "all" && brute_feasible);

    double ccim_ms = 0.0;
    double acsii_ms = 0.0;
    double brute_ms = 0.0;
    if (want_ccim) {
        ccim_ms = time_method(args.iters, [&] {
            const nbekcf::CorrelationStack cs = nbekcf::circulant_correlation(x0, z);
            g_bench_sink = cs.maps.back().data().back();
        });
    }
    if (want_acsii) {
        acsii_ms = time_method(args.iters, [&] {
            const nbekcf::RealMatrix b = nbekcf::autocorrelation(z, args.m, args.n);
            g_bench_sink = b.data().back();
        });
    }
    if (want_brute) {
        brute_ms = time_method(args.iters, [&] {
            const nbekcf::CorrelationStack cs = nbekcf::oracle::brute_circulant_correlation(x0, z);
            g_bench_sink = cs.maps.back().data().back();
        });
    }

    std::printf("%-6s %4s %4s %4s %4s %4s %12s %9s\n", "method", "m", "n", "M", "N", "D",
                "median_ms", "speedup");
    auto row = [&](const char* name, double ms, const char* speedup) {
        std::printf("%-6s %4d %4d %4d %4d %4d %12.3f %9s\n", name, args.m, args.n, args.rows,
                    args.cols, args.d, ms, speedup);
    };
    char speedup[32] = "-";
    if (want_ccim && want_brute && ccim_ms > 0.0) {
        std::snprintf(speedup, sizeof(speedup), "%.2fx", brute_ms / ccim_ms);
    }
    if (want_ccim) {
        row("ccim", ccim_ms, speedup);
    }
    if (want_acsii) {
        row("acsii", acsii_ms, "-");
    }
    if (want_brute) {
        row("brute", brute_ms, "-");
    }
    if (args.method == "all" && !brute_feasible) {
        std::printf("brute skipped: requires M <= 16 and N <= 16\n");
    }
    return 0;
}

int run_selftest(const SelftestArgs& args) {
    if (args.cases == 0) {
        std::printf("warning: 0 cases requested, suites pass trivially\n");
    }
    const std::vector<nbekcf::SuiteResult> results = nbekcf::run_all_suites(args.cases, args.seed);
    bool all_passed = true;
    for (const nbekcf::SuiteResult& r : results) {
        std::printf("%-10s %5d cases, %3d failures, max deviation %.3g\n", r.name.c_str(), r.cases,
                    r.failures, r.max_deviation);
        if (!r.passed()) {
            all_passed = false;
            std::printf("  first failure: %s\n", r.first_failure.c_str());
        }
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dense correlation-filter tracking toolkit"};
    app.require_subcommand(1);

    TrackArgs track_args;
    CLI::App* track_cmd = app.add_subcommand("track", "track a target through a frame directory");
    track_cmd->add_option("--seq", track_args.seq, "directory of .pgm/.ppm frames")
        ->required()
        ->check(CLI::ExistingDirectory);
    track_cmd->add_option("--init", track_args.init, "initial box as x,y,w,h")->required();
    track_cmd->add_option("--gt", track_args.gt, "ground-truth box file (1-indexed x,y,w,h)")
        ->check(CLI::ExistingFile);
    track_cmd->add_option("--out", track_args.out, "output CSV path");
    track_cmd->add_option("--metrics", track_args.metrics, "metrics JSON path (with --gt)");
    track_cmd->add_option("--sigma", track_args.sigma, "Gaussian kernel width");
    track_cmd->add_option("--lambda", track_args.lambda, "ridge regularization");
    track_cmd->add_option("--gamma", track_args.gamma, "model learning rate");
    track_cmd->add_option("--cell", track_args.cell, "feature cell size in pixels");
    track_cmd->add_option("--search-factor", track_args.search_factor,
                          "search window side relative to sqrt(m n)");
    track_cmd->add_option("--scale-steps", track_args.scale_steps, "scale pyramid size (odd)");
    track_cmd->add_option("--kernel", track_args.kernel, "kernel type")
        ->check(CLI::IsMember({"gaussian", "linear", "poly"}));

    BenchArgs bench_args;
    CLI::App* bench_cmd = app.add_subcommand("bench", "time the correlation kernels");
    bench_cmd->add_option("--m", bench_args.m, "filter rows");
    bench_cmd->add_option("--n", bench_args.n, "filter cols");
    bench_cmd->add_option("--M", bench_args.rows, "search map rows");
    bench_cmd->add_option("--N", bench_args.cols, "search map cols");
    bench_cmd->add_option("--D", bench_args.d, "channels");
    bench_cmd->add_option("--iters", bench_args.iters, "timed iterations");
    bench_cmd->add_option("--method", bench_args.method, "what to time")
        ->check(CLI::IsMember({"ccim", "acsii", "brute", "all"}));
    bench_cmd->add_option("--seed", bench_args.seed, "input seed");

    SelftestArgs selftest_args;
    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "run the randomized oracle-equivalence suites");
    selftest_cmd->add_option("--cases", selftest_args.cases, "cases per suite")
        ->check(CLI::NonNegativeNumber);
    selftest_cmd->add_option("--seed", selftest_args.seed, "suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (track_cmd->parsed()) {
            return run_track(track_args);
        }
        if (bench_cmd->parsed()) {
            return run_bench(bench_args);
        }
        return run_selftest(selftest_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
