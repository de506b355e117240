#include "nbekcf/oracle.hpp"

#include <cmath>

namespace nbekcf::oracle {

namespace {

// Entry (u, v, d) of the base filter shifted down by ip and right by jp.
double shifted_entry(const FeatureMap& x0, int ip, int jp, int u, int v, int d) {
    const int su = (u - ip + x0.rows()) % x0.rows();
    const int sv = (v - jp + x0.cols()) % x0.cols();
    return x0.at(su, sv, d);
}

}  // namespace

RealMatrix brute_autocorrelation(const FeatureMap& z, int m, int n) {
    if (m < 1 || n < 1 || m > z.rows() || n > z.cols()) {
        throw std::invalid_argument("brute_autocorrelation: window does not fit the map");
    }
    const int out_rows = z.rows() - m + 1;
    const int out_cols = z.cols() - n + 1;
    RealMatrix b(out_rows, out_cols);
    for (int i = 0; i < out_rows; ++i) {
        for (int j = 0; j < out_cols; ++j) {
            double s = 0.0;
            for (int u = 0; u < m; ++u) {
                for (int v = 0; v < n; ++v) {
                    for (int d = 0; d < z.channels(); ++d) {
                        const double e = z.at(i + u, j + v, d);
                        s += e * e;
                    }
                }
            }
            b(i, j) = s;
        }
    }
    return b;
}

CorrelationStack brute_circulant_correlation(const FeatureMap& x0, const FeatureMap& z) {
    const int m = x0.rows();
    const int n = x0.cols();
    if (m > z.rows() || n > z.cols()) {
        throw std::invalid_argument("brute_circulant_correlation: filter larger than the map");
    }
    if (x0.channels() != z.channels()) {
        throw std::invalid_argument("brute_circulant_correlation: channel counts differ");
    }
    const int d = x0.channels();
    const int out_rows = z.rows() - m + 1;
    const int out_cols = z.cols() - n + 1;

    CorrelationStack cs;
    cs.m = m;
    cs.n = n;
    cs.out_rows = out_rows;
    cs.out_cols = out_cols;
    cs.maps.reserve(static_cast<std::size_t>(m) * n);
    for (int ip = 0; ip < m; ++ip) {
        for (int jp = 0; jp < n; ++jp) {
            RealMatrix map(out_rows, out_cols);
            for (int iw = 0; iw < out_rows; ++iw) {
                for (int jw = 0; jw < out_cols; ++jw) {
                    double s = 0.0;
                    for (int u = 0; u < m; ++u) {
                        for (int v = 0; v < n; ++v) {
                            for (int k = 0; k < d; ++k) {
                                s += shifted_entry(x0, ip, jp, u, v, k) * z.at(iw + u, jw + v, k);
                            }
                        }
                    }
                    map(iw, jw) = s;
                }
            }
            cs.maps.push_back(std::move(map));
        }
    }
    return cs;
}

KernelMatrix brute_kernel_matrix(const FeatureMap& x0, const FeatureMap& z,
                                 const KernelConfig& config) {
    const int m = x0.rows();
    const int n = x0.cols();
    const int d = x0.channels();
    if (m > z.rows() || n > z.cols() || d != z.channels()) {
        throw std::invalid_argument("brute_kernel_matrix: incompatible shapes");
    }
    const int out_rows = z.rows() - m + 1;
    const int out_cols = z.cols() - n + 1;

    KernelMatrix k;
    k.rows = out_rows * out_cols;
    k.cols = m * n;
    k.sample_rows = out_rows;
    k.sample_cols = out_cols;
    k.filter_rows = m;
    k.filter_cols = n;
    k.config = config;
    k.values.assign(static_cast<std::size_t>(k.rows) * k.cols, 0.0);

    const double denom = config.sigma * config.sigma *
                         (config.normalize_by_dim ? static_cast<double>(m) * n * d : 1.0);
    for (int iw = 0; iw < out_rows; ++iw) {
        for (int jw = 0; jw < out_cols; ++jw) {
            const int p = iw * out_cols + jw;
            for (int ip = 0; ip < m; ++ip) {
                for (int jp = 0; jp < n; ++jp) {
                    const int c = ip * n + jp;
                    double dot = 0.0;
                    double filter_norm = 0.0;
                    double window_norm = 0.0;
                    for (int u = 0; u < m; ++u) {
                        for (int v = 0; v < n; ++v) {
                            for (int e = 0; e < d; ++e) {
                                const double fx = shifted_entry(x0, ip, jp, u, v, e);
                                const double wz = z.at(iw + u, jw + v, e);
                                dot += fx * wz;
                                filter_norm += fx * fx;
                                window_norm += wz * wz;
                            }
                        }
                    }
                    double value = 0.0;
                    switch (config.kind) {
                        case KernelKind::gaussian: {
                            double d2 = filter_norm + window_norm - 2.0 * dot;
                            if (d2 < 0.0) {
                                d2 = 0.0;
                            }
                            value = std::exp(-d2 / denom);
                            break;
                        }
                        case KernelKind::linear:
                            value = dot;
                            break;
                        case KernelKind::polynomial:
                            value = std::pow(dot + config.poly_offset, config.poly_degree);
                            break;
                    }
                    k(p, c) = value;
                }
            }
        }
    }
    return k;
}

}  // namespace nbekcf::oracle
