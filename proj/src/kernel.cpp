#include "nbekcf/kernel.hpp"

#include <cmath>

#include "nbekcf/acsii.hpp"
#include "nbekcf/ccim.hpp"
#include "nbekcf/cyclic.hpp"
#include "nbekcf/parallel.hpp"

namespace nbekcf {

namespace {

void validate_config(const KernelConfig& cfg) {
    if (cfg.kind == KernelKind::gaussian && !(cfg.sigma > 0.0 && std::isfinite(cfg.sigma))) {
        throw std::invalid_argument("kernel: sigma must be positive and finite");
    }
    if (cfg.kind == KernelKind::polynomial) {
        if (!(cfg.poly_degree >= 1.0 && std::isfinite(cfg.poly_degree))) {
            throw std::invalid_argument("kernel: poly_degree must be >= 1");
        }
        if (!std::isfinite(cfg.poly_offset)) {
            throw std::invalid_argument("kernel: poly_offset must be finite");
        }
    }
}

double dimension_scale(const KernelConfig& cfg, int m, int n, int d) {
    return cfg.normalize_by_dim ? static_cast<double>(m) * n * d : 1.0;
}

}  // namespace

double base_filter_norm(const FeatureMap& x0) {
    double s = 0.0;
    for (double v : x0.data()) {
        s += v * v;
    }
    return s;
}

KernelMatrix kernel_matrix(const FeatureMap& x0, const FeatureMap& z, const KernelConfig& config) {
    validate_config(config);
    const int m = x0.rows();
    const int n = x0.cols();
    const int d = x0.channels();

    const RealMatrix window_norms = autocorrelation(z, m, n);
    const CorrelationStack cs = circulant_correlation(x0, z);

    KernelMatrix k;
    k.rows = cs.out_rows * cs.out_cols;
    k.cols = m * n;
    k.sample_rows = cs.out_rows;
    k.sample_cols = cs.out_cols;
    k.filter_rows = m;
    k.filter_cols = n;
    k.config = config;
    k.values.assign(static_cast<std::size_t>(k.rows) * k.cols, 0.0);

    // Correlation map c is stored row-major over windows, so its flat index
    // equals the kernel row index.
    std::vector<const double*> corr(k.cols);
    for (int c = 0; c < k.cols; ++c) {
        corr[c] = cs.maps[c].data().data();
    }

    const double filter_norm = base_filter_norm(x0);
    const double denom = config.sigma * config.sigma * dimension_scale(config, m, n, d);

    parallel_for(0, k.rows, [&](int p) {
        double* out = k.values.data() + static_cast<std::size_t>(p) * k.cols;
        switch (config.kind) {
            case KernelKind::gaussian: {
                const double base = filter_norm + window_norms.data()[p];
                for (int c = 0; c < k.cols; ++c) {
                    double d2 = base - 2.0 * corr[c][p];
                    if (d2 < 0.0) {
                        d2 = 0.0;  // roundoff guard; keeps entries in (0, 1]
                    }
                    out[c] = std::exp(-d2 / denom);
                }
                break;
            }
            case KernelKind::linear:
                for (int c = 0; c < k.cols; ++c) {
                    out[c] = corr[c][p];
                }
                break;
            case KernelKind::polynomial:
                for (int c = 0; c < k.cols; ++c) {
                    out[c] = std::pow(corr[c][p] + config.poly_offset, config.poly_degree);
                }
                break;
        }
    });
    return k;
}

KernelMatrix gram_kernel_matrix(const FeatureMap& x0, const KernelConfig& config) {
    validate_config(config);
    const int m = x0.rows();
    const int n = x0.cols();
    const int d = x0.channels();
    const int count = m * n;

    std::vector<FeatureMap> shifted;
    shifted.reserve(count);
    for (int ip = 0; ip < m; ++ip) {
        for (int jp = 0; jp < n; ++jp) {
            shifted.push_back(cyclic_shift_map(x0, ShiftSpec{ip, jp}));
        }
    }

    KernelMatrix k;
    k.rows = count;
    k.cols = count;
    k.sample_rows = m;
    k.sample_cols = n;
    k.filter_rows = m;
    k.filter_cols = n;
    k.config = config;
    k.values.assign(static_cast<std::size_t>(count) * count, 0.0);

    const double denom = config.sigma * config.sigma * dimension_scale(config, m, n, d);
    const std::size_t len = x0.data().size();
    for (int a = 0; a < count; ++a) {
        const double* va = shifted[a].data().data();
        for (int b = a; b < count; ++b) {
            const double* vb = shifted[b].data().data();
            double value = 0.0;
            switch (config.kind) {
                case KernelKind::gaussian: {
                    double d2 = 0.0;
                    for (std::size_t e = 0; e < len; ++e) {
                        const double diff = va[e] - vb[e];
                        d2 += diff * diff;
                    }
                    value = std::exp(-d2 / denom);
                    break;
                }
                case KernelKind::linear: {
                    double dot = 0.0;
                    for (std::size_t e = 0; e < len; ++e) {
                        dot += va[e] * vb[e];
                    }
                    value = dot;
                    break;
                }
                case KernelKind::polynomial: {
                    double dot = 0.0;
                    for (std::size_t e = 0; e < len; ++e) {
                        dot += va[e] * vb[e];
                    }
                    value = std::pow(dot + config.poly_offset, config.poly_degree);
                    break;
                }
            }
            k(a, b) = value;
            k(b, a) = value;
        }
    }
    return k;
}

}  // namespace nbekcf
