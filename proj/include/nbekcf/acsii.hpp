#pragma once

#include "nbekcf/core.hpp"

namespace nbekcf {

// Running 2-D sum table of a squared-channel-sum grid. Entry (i, j) holds the
// sum of the source over rows 0..i and columns 0..j.
struct SquaredIntegralImage {
    RealMatrix values;
};

// A(i, j) = sum over channels of Z(i, j, d)^2.
RealMatrix squared_channel_sum(const FeatureMap& z);

// Prefix-sum table of A: first entry, then first column, then first row, then
// the interior recurrence I(i,j) = I(i-1,j) + I(i,j-1) - I(i-1,j-1) + A(i,j).
SquaredIntegralImage integral_image(const RealMatrix& a);

// Squared Frobenius norm of every m x n window of z at unit stride, computed
// through the integral image in O(rows * cols * channels). Output is
// (rows - m + 1) x (cols - n + 1); entry (i, j) is the squared norm of the
// window whose top-left corner is (i, j).
RealMatrix autocorrelation(const FeatureMap& z, int m, int n);

}  // namespace nbekcf
