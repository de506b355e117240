#pragma once

#include <vector>

#include "nbekcf/core.hpp"

namespace nbekcf {

enum class KernelKind { gaussian, linear, polynomial };

struct KernelConfig {
    KernelKind kind = KernelKind::gaussian;
    double sigma = 4.0;        // Gaussian width, > 0
    double poly_degree = 2.0;  // polynomial exponent, >= 1
    double poly_offset = 1.0;  // polynomial additive constant
    // Divide the squared distance by m * n * channels in addition to sigma^2.
    // Keeps the Gaussian response scale comparable across filter sizes.
    bool normalize_by_dim = true;
};

// Kernel evaluations between every dense window (rows, one per window) and
// every cyclically shifted filter (columns, one per shift). Row index
// p = iw * sample_cols + jw, column index c = ip * filter_cols + jp.
struct KernelMatrix {
    int rows = 0;  // number of windows
    int cols = 0;  // number of shifted filters, filter_rows * filter_cols
    int sample_rows = 0;
    int sample_cols = 0;
    int filter_rows = 0;
    int filter_cols = 0;
    KernelConfig config;
    std::vector<double> values;  // row-major

    double operator()(int p, int c) const {
        return values[static_cast<std::size_t>(p) * cols + c];
    }
    double& operator()(int p, int c) {
        return values[static_cast<std::size_t>(p) * cols + c];
    }
};

// Squared Frobenius norm of the base filter over all positions and channels.
// Cyclic shifts permute entries, so every shifted filter has the same norm.
double base_filter_norm(const FeatureMap& x0);

// Kernel matrix between the shifted-filter set of x0 and the dense windows of
// z, built from the window norms and the correlation stack. Gaussian entries
// clamp the squared distance at zero before exponentiation, so they lie in
// (0, 1] with 1 attained only at zero distance.
KernelMatrix kernel_matrix(const FeatureMap& x0, const FeatureMap& z, const KernelConfig& config);

// Kernel evaluations among the shifted filters themselves: entry (a, b) is
// the kernel of shifts a and b, both indexed ip * n + jp. Symmetric, and for
// the Gaussian kernel the diagonal is exactly 1. Quadratic in m * n, meant
// for analysis and tests rather than the tracking loop.
KernelMatrix gram_kernel_matrix(const FeatureMap& x0, const KernelConfig& config);

}  // namespace nbekcf
