#pragma once

#include "nbekcf/core.hpp"

namespace nbekcf {

// Cyclic displacement: di rows downward, dj columns rightward. Negative and
// out-of-range amounts are reduced modulo the matrix dimensions.
struct ShiftSpec {
    int di = 0;
    int dj = 0;
};

// Mathematical remainder: result in [0, b) for b > 0 regardless of sign(a).
inline int floor_mod(int a, int b) {
    const int r = a % b;
    return r < 0 ? r + b : r;
}

// Cyclically shifts a matrix: out(i, j) = m((i - di) mod rows, (j - dj) mod cols).
// Row i of the output is row (i - di) mod rows of the input with its columns
// rotated right by dj.
RealMatrix cyclic_shift(const RealMatrix& m, ShiftSpec spec);

// Applies the same spatial shift to every channel of a feature map.
FeatureMap cyclic_shift_map(const FeatureMap& map, ShiftSpec spec);

}  // namespace nbekcf
