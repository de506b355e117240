#include "nbekcf/cyclic.hpp"

#include <algorithm>

namespace nbekcf {

namespace {

// Copies src rotated right by dj into dst; both rows hold `cols` groups of
// `group` doubles. dj is already reduced to [0, cols).
void copy_rotated_row(const double* src, double* dst, int cols, int dj, int group) {
    const std::size_t g = static_cast<std::size_t>(group);
    const std::size_t head = static_cast<std::size_t>(cols - dj) * g;
    const std::size_t tail = static_cast<std::size_t>(dj) * g;
    std::copy(src + head, src + head + tail, dst);
    std::copy(src, src + head, dst + tail);
}

}  // namespace

RealMatrix cyclic_shift(const RealMatrix& m, ShiftSpec spec) {
    const int rows = m.rows();
    const int cols = m.cols();
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("cyclic_shift: empty matrix");
    }
    const int di = floor_mod(spec.di, rows);
    const int dj = floor_mod(spec.dj, cols);
    RealMatrix out(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const int si = i >= di ? i - di : i - di + rows;
        copy_rotated_row(m.data().data() + static_cast<std::size_t>(si) * cols,
                         out.data().data() + static_cast<std::size_t>(i) * cols, cols, dj, 1);
    }
    return out;
}

FeatureMap cyclic_shift_map(const FeatureMap& map, ShiftSpec spec) {
    const int rows = map.rows();
    const int cols = map.cols();
    const int d = map.channels();
    const int di = floor_mod(spec.di, rows);
    const int dj = floor_mod(spec.dj, cols);
    std::vector<double> out(map.data().size());
    const std::size_t row_len = static_cast<std::size_t>(cols) * d;
    for (int i = 0; i < rows; ++i) {
        const int si = i >= di ? i - di : i - di + rows;
        copy_rotated_row(map.data().data() + si * row_len, out.data() + i * row_len, cols, dj, d);
    }
    return FeatureMap(rows, cols, d, std::move(out));
}

}  // namespace nbekcf
