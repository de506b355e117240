#include "nbekcf/regression.hpp"

#include <cmath>

namespace nbekcf {

namespace {

void validate_lambda_gamma(double lambda, const double* gamma) {
    if (!(lambda > 0.0 && std::isfinite(lambda))) {
        throw std::invalid_argument("regression: lambda must be positive and finite");
    }
    if (gamma != nullptr && !(*gamma > 0.0 && *gamma < 1.0)) {
        throw std::invalid_argument("regression: gamma must lie in (0, 1)");
    }
}

void validate_pair(const KernelMatrix& k, const LabelMap& y) {
    if (k.rows < 1 || k.cols < 1) {
        throw std::invalid_argument("regression: empty kernel matrix");
    }
    if (y.rows != k.sample_rows || y.cols != k.sample_cols) {
        throw std::invalid_argument("regression: label grid does not match the sample grid");
    }
}

// K^T K + lambda I, built on the upper triangle and mirrored.
RealMatrix normal_matrix(const KernelMatrix& k, double lambda) {
    const int s = k.cols;
    RealMatrix a(s, s);
    for (int p = 0; p < k.rows; ++p) {
        const double* row = k.values.data() + static_cast<std::size_t>(p) * s;
        for (int i = 0; i < s; ++i) {
            const double ki = row[i];
            double* out = a.data().data() + static_cast<std::size_t>(i) * s;
            for (int j = i; j < s; ++j) {
                out[j] += ki * row[j];
            }
        }
    }
    for (int i = 0; i < s; ++i) {
        a(i, i) += lambda;
        for (int j = i + 1; j < s; ++j) {
            a(j, i) = a(i, j);
        }
    }
    return a;
}

std::vector<double> rhs_vector(const KernelMatrix& k, const LabelMap& y) {
    const int s = k.cols;
    std::vector<double> v(s, 0.0);
    for (int p = 0; p < k.rows; ++p) {
        const double* row = k.values.data() + static_cast<std::size_t>(p) * s;
        const double yp = y.values[p];
        for (int j = 0; j < s; ++j) {
            v[j] += row[j] * yp;
        }
    }
    return v;
}

bool cholesky_inplace(RealMatrix& a) {
    const int s = a.rows();
    for (int k = 0; k < s; ++k) {
        double d = a(k, k);
        for (int t = 0; t < k; ++t) {
            d -= a(k, t) * a(k, t);
        }
        if (!(d > 0.0)) {
            return false;
        }
        const double lkk = std::sqrt(d);
        a(k, k) = lkk;
        for (int i = k + 1; i < s; ++i) {
            double v = a(i, k);
            for (int t = 0; t < k; ++t) {
                v -= a(i, t) * a(k, t);
            }
            a(i, k) = v / lkk;
        }
    }
    return true;
}

std::vector<double> cholesky_solve(const RealMatrix& l, const std::vector<double>& b) {
    const int s = l.rows();
    std::vector<double> x(b);
    for (int i = 0; i < s; ++i) {
        double v = x[i];
        for (int t = 0; t < i; ++t) {
            v -= l(i, t) * x[t];
        }
        x[i] = v / l(i, i);
    }
    for (int i = s - 1; i >= 0; --i) {
        double v = x[i];
        for (int t = i + 1; t < s; ++t) {
            v -= l(t, i) * x[t];
        }
        x[i] = v / l(i, i);
    }
    return x;
}

// Solves a x = b for symmetric positive definite a. If factorization fails
// from accumulated roundoff, retries once with a small diagonal jitter
// proportional to the mean diagonal magnitude.
std::vector<double> spd_solve(const RealMatrix& a, const std::vector<double>& b) {
    RealMatrix l = a;
    if (cholesky_inplace(l)) {
        return cholesky_solve(l, b);
    }
    const int s = a.rows();
    double trace = 0.0;
    for (int i = 0; i < s; ++i) {
        trace += a(i, i);
    }
    const double jitter = 1e-10 * trace / s;
    l = a;
    for (int i = 0; i < s; ++i) {
        l(i, i) += jitter;
    }
    if (cholesky_inplace(l)) {
        return cholesky_solve(l, b);
    }
    throw std::runtime_error("regression: normal matrix is not positive definite");
}

}  // namespace

LabelMap::LabelMap(int rows_in, int cols_in, std::vector<double> values_in)
    : rows(rows_in), cols(cols_in), values(std::move(values_in)) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("LabelMap: dimensions must be positive");
    }
    if (values.size() != static_cast<std::size_t>(rows) * cols) {
        throw std::invalid_argument("LabelMap: value count does not match dimensions");
    }
    int peaks = 0;
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("LabelMap: value outside [0, 1]");
        }
        if (v == 1.0) {
            ++peaks;
        }
    }
    if (peaks > 1) {
        throw std::invalid_argument("LabelMap: at most one peak value of 1 allowed");
    }
}

std::vector<double> solve_ridge(const KernelMatrix& k, const LabelMap& y, double lambda) {
    validate_lambda_gamma(lambda, nullptr);
    validate_pair(k, y);
    return spd_solve(normal_matrix(k, lambda), rhs_vector(k, y));
}

std::vector<double> multiframe_weights(int q_count, double gamma) {
    if (q_count < 1) {
        throw std::invalid_argument("multiframe_weights: frame count must be >= 1");
    }
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("multiframe_weights: gamma must lie in (0, 1)");
    }
    std::vector<double> beta(q_count);
    beta[0] = std::pow(1.0 - gamma, q_count - 1);
    for (int q = 2; q <= q_count; ++q) {
        beta[q - 1] = gamma * std::pow(1.0 - gamma, q_count - q);
    }
    return beta;
}

std::vector<double> direct_multiframe_solution(const std::vector<KernelMatrix>& ks,
                                               const LabelMap& y, double lambda, double gamma) {
    if (ks.empty()) {
        throw std::invalid_argument("direct_multiframe_solution: no kernel matrices");
    }
    validate_lambda_gamma(lambda, &gamma);
    const std::vector<double> beta = multiframe_weights(static_cast<int>(ks.size()), gamma);
    double beta_sum = 0.0;
    for (double b : beta) {
        beta_sum += b;
    }
    if (std::abs(beta_sum - 1.0) > 1e-12) {
        throw std::logic_error("direct_multiframe_solution: frame weights do not sum to 1");
    }

    const int s = ks.front().cols;
    RealMatrix acc(s, s);
    std::vector<double> rhs(s, 0.0);
    for (std::size_t q = 0; q < ks.size(); ++q) {
        const KernelMatrix& k = ks[q];
        if (k.cols != s) {
            throw std::invalid_argument("direct_multiframe_solution: kernel sizes differ");
        }
        validate_pair(k, y);
        const RealMatrix a = normal_matrix(k, lambda);
        const std::vector<double> v = rhs_vector(k, y);
        const double w = beta[q];
        for (std::size_t e = 0; e < acc.data().size(); ++e) {
            acc.data()[e] += w * a.data()[e];
        }
        for (int e = 0; e < s; ++e) {
            rhs[e] += w * v[e];
        }
    }
    return spd_solve(acc, rhs);
}

ModelState init_model(const KernelMatrix& k1, const LabelMap& y, double lambda, double gamma) {
    validate_lambda_gamma(lambda, &gamma);
    validate_pair(k1, y);
    ModelState state;
    state.ks = normal_matrix(k1, lambda);
    state.v = rhs_vector(k1, y);
    state.alpha = spd_solve(state.ks, state.v);
    state.lambda = lambda;
    state.gamma = gamma;
    state.frame_count = 1;
    return state;
}

void update_model(ModelState& state, const KernelMatrix& k_new, const LabelMap& y) {
    if (state.frame_count < 1) {
        throw std::invalid_argument("update_model: model is not initialized");
    }
    if (k_new.cols != state.ks.rows()) {
        throw std::invalid_argument("update_model: kernel size does not match the model");
    }
    validate_pair(k_new, y);
    const RealMatrix a = normal_matrix(k_new, state.lambda);
    const std::vector<double> v = rhs_vector(k_new, y);
    const double g = state.gamma;
    for (std::size_t e = 0; e < state.ks.data().size(); ++e) {
        state.ks.data()[e] = (1.0 - g) * state.ks.data()[e] + g * a.data()[e];
    }
    for (std::size_t e = 0; e < state.v.size(); ++e) {
        state.v[e] = (1.0 - g) * state.v[e] + g * v[e];
    }
    state.alpha = spd_solve(state.ks, state.v);
    ++state.frame_count;
}

}  // namespace nbekcf
