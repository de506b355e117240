#pragma once

#include <vector>

#include "nbekcf/core.hpp"

namespace nbekcf {

// One M x N matrix per base-filter position (i, j), i < m, j < n. Entry (i, j)
// is the channel-weighted sum of the search map, cyclically shifted up by i
// and left by j.
struct FundamentalMatrixSet {
    int m = 0;
    int n = 0;
    int map_rows = 0;
    int map_cols = 0;
    std::vector<RealMatrix> mats;  // indexed i * n + j

    const RealMatrix& at(int i, int j) const { return mats[static_cast<std::size_t>(i) * n + j]; }
    RealMatrix& at(int i, int j) { return mats[static_cast<std::size_t>(i) * n + j]; }
};

// Entrywise running sum of the fundamental set over the (i, j) grid:
// entry (s, t) holds the entrywise sum of all fundamental matrices with
// i <= s and j <= t. Memory is Theta(m * n * M * N).
struct IntegralMatrix {
    int m = 0;
    int n = 0;
    int map_rows = 0;
    int map_cols = 0;
    std::vector<RealMatrix> mats;  // indexed s * n + t

    const RealMatrix& at(int s, int t) const { return mats[static_cast<std::size_t>(s) * n + t]; }
    RealMatrix& at(int s, int t) { return mats[static_cast<std::size_t>(s) * n + t]; }
};

// Correlation of every cyclically shifted m x n filter with every dense m x n
// window of the search map. map(ip, jp) is (M-m+1) x (N-n+1); its entry
// (iw, jw) is the full inner product of the filter shifted down by ip and
// right by jp with the window whose top-left corner is (iw, jw).
struct CorrelationStack {
    int m = 0;
    int n = 0;
    int out_rows = 0;
    int out_cols = 0;
    std::vector<RealMatrix> maps;  // indexed ip * n + jp

    const RealMatrix& map(int ip, int jp) const {
        return maps[static_cast<std::size_t>(ip) * n + jp];
    }
    RealMatrix& map(int ip, int jp) { return maps[static_cast<std::size_t>(ip) * n + jp]; }
};

// Builds the fundamental matrices for base filter x0 (m x n x D) over search
// map z (M x N x D). Requires m <= M, n <= N and matching channel counts.
FundamentalMatrixSet fundamental_matrices(const FeatureMap& x0, const FeatureMap& z);

// Running 2-D sum over the set's (i, j) grid, computed in place on the moved
// storage: first entry, first column, first row, then the interior
// recurrence, all entrywise over M x N.
IntegralMatrix integral_matrix(FundamentalMatrixSet fm);

// Full correlation stack in O(M N (m n + D)) per call: fundamental matrices,
// their integral, then for every (ip, jp) the four realigned partial sums
// assembled by index remapping and cropped to the dense-window grid.
CorrelationStack circulant_correlation(const FeatureMap& x0, const FeatureMap& z);

}  // namespace nbekcf
