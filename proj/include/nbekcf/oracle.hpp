#pragma once

#include "nbekcf/ccim.hpp"
#include "nbekcf/core.hpp"
#include "nbekcf/kernel.hpp"

namespace nbekcf::oracle {

// Reference implementations built from the definitions alone: explicit window
// loops and explicitly materialized shifts, no integral tables. They share
// only the container types with the fast paths and exist to check them, in
// tests and in the selftest command. Costs are polynomial factors worse, so
// keep instances small.

// Squared norm of every m x n window by direct summation, O(MN mn D).
RealMatrix brute_autocorrelation(const FeatureMap& z, int m, int n);

// Correlation of every shifted filter with every window by direct dot
// products over explicitly shifted copies of x0, O(MN (mn)^2 ... D).
CorrelationStack brute_circulant_correlation(const FeatureMap& x0, const FeatureMap& z);

// Kernel matrix from per-pair norms and dot products computed directly.
KernelMatrix brute_kernel_matrix(const FeatureMap& x0, const FeatureMap& z,
                                 const KernelConfig& config);

}  // namespace nbekcf::oracle
