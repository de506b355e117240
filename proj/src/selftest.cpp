#include "nbekcf/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "nbekcf/acsii.hpp"
#include "nbekcf/ccim.hpp"
#include "nbekcf/kernel.hpp"
#include "nbekcf/oracle.hpp"
#include "nbekcf/regression.hpp"

namespace nbekcf {

namespace {

// Entrywise relative deviation with a unit floor, so cancellation-prone
// values near zero are judged on absolute error.
double rel_deviation(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

constexpr double kFloatTol = 1e-9;

struct InstanceDims {
    int m = 0, n = 0, rows = 0, cols = 0, d = 0;
};

InstanceDims draw_dims(std::mt19937_64& rng, int max_side, int max_channels) {
    InstanceDims dims;
    dims.rows = std::uniform_int_distribution<int>(1, max_side)(rng);
    dims.cols = std::uniform_int_distribution<int>(1, max_side)(rng);
    dims.m = std::uniform_int_distribution<int>(1, dims.rows)(rng);
    dims.n = std::uniform_int_distribution<int>(1, dims.cols)(rng);
    dims.d = std::uniform_int_distribution<int>(1, max_channels)(rng);
    return dims;
}

FeatureMap random_map(std::mt19937_64& rng, int rows, int cols, int d, bool integer_valued) {
    std::vector<double> data(static_cast<std::size_t>(rows) * cols * d);
    if (integer_valued) {
        std::uniform_int_distribution<int> dist(-4, 4);
        for (double& v : data) {
            v = dist(rng);
        }
    } else {
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (double& v : data) {
            v = dist(rng);
        }
    }
    return make_feature_map(rows, cols, d, std::move(data));
}

void record_failure(SuiteResult& res, const char* text) {
    ++res.failures;
    if (res.first_failure.empty()) {
        res.first_failure = text;
    }
}

}  // namespace

SuiteResult run_acsii_suite(int cases, std::uint64_t seed) {
    SuiteResult res;
    res.name = "acsii";
    res.cases = cases;
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
        const bool integer_valued = c % 2 == 0;
        const InstanceDims dims = draw_dims(rng, 10, 3);
        const FeatureMap z = random_map(rng, dims.rows, dims.cols, dims.d, integer_valued);
        const RealMatrix fast = autocorrelation(z, dims.m, dims.n);
        const RealMatrix slow = oracle::brute_autocorrelation(z, dims.m, dims.n);
        bool failed = false;
        for (int i = 0; i < fast.rows() && !failed; ++i) {
            for (int j = 0; j < fast.cols() && !failed; ++j) {
                const double a = fast(i, j);
                const double b = slow(i, j);
                const double dev = rel_deviation(a, b);
                res.max_deviation = std::max(res.max_deviation, dev);
                if (integer_valued ? a != b : dev > kFloatTol) {
                    char buf[192];
                    std::snprintf(buf, sizeof(buf),
                                  "m=%d n=%d M=%d N=%d D=%d window=(%d,%d) fast=%.17g brute=%.17g",
                                  dims.m, dims.n, dims.rows, dims.cols, dims.d, i, j, a, b);
                    record_failure(res, buf);
                    failed = true;
                }
            }
        }
    }
    return res;
}

SuiteResult run_ccim_suite(int cases, std::uint64_t seed) {
    SuiteResult res;
    res.name = "ccim";
    res.cases = cases;
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
        const bool integer_valued = c % 2 == 0;
        const InstanceDims dims = draw_dims(rng, 10, 3);
        const FeatureMap x0 = random_map(rng, dims.m, dims.n, dims.d, integer_valued);
        const FeatureMap z = random_map(rng, dims.rows, dims.cols, dims.d, integer_valued);
        const CorrelationStack fast = circulant_correlation(x0, z);
        const CorrelationStack slow = oracle::brute_circulant_correlation(x0, z);
        bool failed = false;
        for (int ip = 0; ip < dims.m && !failed; ++ip) {
            for (int jp = 0; jp < dims.n && !failed; ++jp) {
                const RealMatrix& fm = fast.map(ip, jp);
                const RealMatrix& sm = slow.map(ip, jp);
                for (int i = 0; i < fm.rows() && !failed; ++i) {
                    for (int j = 0; j < fm.cols() && !failed; ++j) {
                        const double a = fm(i, j);
                        const double b = sm(i, j);
                        const double dev = rel_deviation(a, b);
                        res.max_deviation = std::max(res.max_deviation, dev);
                        if (integer_valued ? a != b : dev > kFloatTol) {
                            char buf[224];
                            std::snprintf(buf, sizeof(buf),
                                          "m=%d n=%d M=%d N=%d D=%d i'=%d j'=%d window=(%d,%d) "
                                          "fast=%.17g brute=%.17g",
                                          dims.m, dims.n, dims.rows, dims.cols, dims.d, ip, jp, i,
                                          j, a, b);
                            record_failure(res, buf);
                            failed = true;
                        }
                    }
                }
            }
        }
    }
    return res;
}

SuiteResult run_kernel_suite(int cases, std::uint64_t seed) {
    SuiteResult res;
    res.name = "kernel";
    res.cases = cases;
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
        InstanceDims dims;
        dims.m = std::uniform_int_distribution<int>(1, 4)(rng);
        dims.n = std::uniform_int_distribution<int>(1, 4)(rng);
        dims.rows = std::uniform_int_distribution<int>(dims.m, 8)(rng);
        dims.cols = std::uniform_int_distribution<int>(dims.n, 8)(rng);
        dims.d = std::uniform_int_distribution<int>(1, 3)(rng);
        const FeatureMap x0 = random_map(rng, dims.m, dims.n, dims.d, false);
        const FeatureMap z = random_map(rng, dims.rows, dims.cols, dims.d, false);
        KernelConfig cfg;
        cfg.normalize_by_dim = c % 2 == 0;
        const KernelMatrix fast = kernel_matrix(x0, z, cfg);
        const KernelMatrix slow = oracle::brute_kernel_matrix(x0, z, cfg);
        bool failed = false;
        for (int p = 0; p < fast.rows && !failed; ++p) {
            for (int q = 0; q < fast.cols && !failed; ++q) {
                const double a = fast(p, q);
                const double b = slow(p, q);
                const double dev = rel_deviation(a, b);
                res.max_deviation = std::max(res.max_deviation, dev);
                const bool out_of_range = !(a > 0.0 && a <= 1.0);
                if (dev > kFloatTol || out_of_range) {
                    char buf[224];
                    std::snprintf(buf, sizeof(buf),
                                  "m=%d n=%d M=%d N=%d D=%d normalize=%d entry=(%d,%d) "
                                  "fast=%.17g brute=%.17g%s",
                                  dims.m, dims.n, dims.rows, dims.cols, dims.d,
                                  cfg.normalize_by_dim ? 1 : 0, p, q, a, b,
                                  out_of_range ? " (outside (0,1])" : "");
                    record_failure(res, buf);
                    failed = true;
                }
            }
        }
        if (failed) {
            continue;
        }
        const KernelMatrix gram = gram_kernel_matrix(x0, cfg);
        for (int a = 0; a < gram.rows && !failed; ++a) {
            if (gram(a, a) != 1.0) {
                char buf[160];
                std::snprintf(buf, sizeof(buf), "m=%d n=%d D=%d gram diagonal (%d) = %.17g != 1",
                              dims.m, dims.n, dims.d, a, gram(a, a));
                record_failure(res, buf);
                failed = true;
                break;
            }
            for (int b = a + 1; b < gram.cols; ++b) {
                if (gram(a, b) != gram(b, a)) {
                    char buf[160];
                    std::snprintf(buf, sizeof(buf), "m=%d n=%d D=%d gram asymmetry at (%d,%d)",
                                  dims.m, dims.n, dims.d, a, b);
                    record_failure(res, buf);
                    failed = true;
                    break;
                }
            }
        }
    }
    return res;
}

SuiteResult run_regression_suite(int cases, std::uint64_t seed) {
    SuiteResult res;
    res.name = "regression";
    res.cases = cases;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    std::uniform_real_distribution<double> label(0.0, 0.9);
    for (int c = 0; c < cases; ++c) {
        const int sample_rows = std::uniform_int_distribution<int>(3, 4)(rng);
        const int sample_cols = std::uniform_int_distribution<int>(3, 4)(rng);
        const int m = std::uniform_int_distribution<int>(1, 3)(rng);
        const int n = std::uniform_int_distribution<int>(1, 3)(rng);
        const int q_count = 2 + c % 7;
        const double lambda = c % 2 == 0 ? 1e-4 : 0.1;
        const double gamma = c % 4 < 2 ? 0.01 : 0.25;
        const int rows = sample_rows * sample_cols;
        const int cols = m * n;

        std::vector<KernelMatrix> ks(q_count);
        for (KernelMatrix& k : ks) {
            k.rows = rows;
            k.cols = cols;
            k.sample_rows = sample_rows;
            k.sample_cols = sample_cols;
            k.filter_rows = m;
            k.filter_cols = n;
            k.values.resize(static_cast<std::size_t>(rows) * cols);
            for (double& v : k.values) {
                v = entry(rng);
            }
        }
        std::vector<double> y_values(rows);
        for (double& v : y_values) {
            v = label(rng);
        }
        y_values[std::uniform_int_distribution<int>(0, rows - 1)(rng)] = 1.0;
        const LabelMap y(sample_rows, sample_cols, std::move(y_values));

        // Frame weights must form a convex combination.
        const std::vector<double> beta = multiframe_weights(q_count, gamma);
        double beta_sum = 0.0;
        for (double b : beta) {
            beta_sum += b;
        }
        if (std::abs(beta_sum - 1.0) > 1e-12) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "Q=%d gamma=%g weight sum=%.17g", q_count, gamma,
                          beta_sum);
            record_failure(res, buf);
            continue;
        }
        res.max_deviation = std::max(res.max_deviation, std::abs(beta_sum - 1.0));

        // Single-frame solve must satisfy its own normal equations.
        const KernelMatrix& k1 = ks.front();
        const std::vector<double> alpha = solve_ridge(k1, y, lambda);
        std::vector<double> rhs(cols, 0.0);
        std::vector<double> residual(cols, 0.0);
        for (int j = 0; j < cols; ++j) {
            double v = 0.0;
            for (int p = 0; p < rows; ++p) {
                v += k1(p, j) * y.values[p];
            }
            rhs[j] = v;
        }
        for (int i = 0; i < cols; ++i) {
            double v = lambda * alpha[i] - rhs[i];
            for (int j = 0; j < cols; ++j) {
                double dot = 0.0;
                for (int p = 0; p < rows; ++p) {
                    dot += k1(p, i) * k1(p, j);
                }
                v += dot * alpha[j];
            }
            residual[i] = v;
        }
        double res_norm = 0.0;
        double rhs_norm = 0.0;
        for (int i = 0; i < cols; ++i) {
            res_norm += residual[i] * residual[i];
            rhs_norm += rhs[i] * rhs[i];
        }
        const double rel_residual = std::sqrt(res_norm) / std::max(1.0, std::sqrt(rhs_norm));
        res.max_deviation = std::max(res.max_deviation, rel_residual);
        if (rel_residual > 1e-8) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "P=%d mn=%d lambda=%g residual=%.17g", rows, cols,
                          lambda, rel_residual);
            record_failure(res, buf);
            continue;
        }

        // Recursive updates must reproduce the one-shot weighted solution.
        ModelState state = init_model(ks.front(), y, lambda, gamma);
        for (int q = 1; q < q_count; ++q) {
            update_model(state, ks[q], y);
        }
        const std::vector<double> direct = direct_multiframe_solution(ks, y, lambda, gamma);
        double worst = 0.0;
        for (int i = 0; i < cols; ++i) {
            worst = std::max(worst, rel_deviation(state.alpha[i], direct[i]));
        }
        res.max_deviation = std::max(res.max_deviation, worst);
        if (worst > 1e-10) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "P=%d mn=%d Q=%d gamma=%g recursive-vs-direct=%.17g",
                          rows, cols, q_count, gamma, worst);
            record_failure(res, buf);
        }
    }
    return res;
}

std::vector<SuiteResult> run_all_suites(int cases, std::uint64_t seed) {
    return {run_acsii_suite(cases, seed), run_ccim_suite(cases, seed),
            run_kernel_suite(cases, seed), run_regression_suite(cases, seed)};
}

}  // namespace nbekcf
