#pragma once

#include <vector>

#include "nbekcf/core.hpp"
#include "nbekcf/kernel.hpp"

namespace nbekcf {

// Regression target over the dense-window grid: one value per window in
// [0, 1], row-major, with at most one entry equal to 1 (the peak). An
// all-zero map is allowed and regresses to the zero solution.
struct LabelMap {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    LabelMap() = default;
    LabelMap(int rows, int cols, std::vector<double> values);

    double operator()(int i, int j) const {
        return values[static_cast<std::size_t>(i) * cols + j];
    }
};

// Sufficient statistics of the ridge system, updated recursively per frame:
// ks accumulates the regularized normal matrix, v the right-hand side, and
// alpha is the current solution of ks * alpha = v. Single-owner mutable
// state; concurrent use requires external synchronization.
struct ModelState {
    RealMatrix ks;            // mn x mn, symmetric positive definite
    std::vector<double> v;    // mn
    std::vector<double> alpha;  // mn
    double lambda = 0.0;
    double gamma = 0.0;
    int frame_count = 0;
};

// Single-frame ridge solution alpha = (K^T K + lambda I)^{-1} K^T y.
std::vector<double> solve_ridge(const KernelMatrix& k, const LabelMap& y, double lambda);

// Frame weights of the recursive scheme after q_count frames with learning
// rate gamma: the first frame keeps (1-gamma)^(q_count-1), frame q > 1 keeps
// gamma * (1-gamma)^(q_count-q). The weights sum to 1.
std::vector<double> multiframe_weights(int q_count, double gamma);

// Weighted multi-frame solution computed in one shot from all kernel
// matrices; the reference the recursion must match.
std::vector<double> direct_multiframe_solution(const std::vector<KernelMatrix>& ks,
                                               const LabelMap& y, double lambda, double gamma);

// Starts the model from the first frame's kernel matrix.
ModelState init_model(const KernelMatrix& k1, const LabelMap& y, double lambda, double gamma);

// Folds one frame into the statistics and re-solves:
// ks <- (1-gamma) ks + gamma (K^T K + lambda I), v <- (1-gamma) v + gamma K^T y.
void update_model(ModelState& state, const KernelMatrix& k_new, const LabelMap& y);

}  // namespace nbekcf
