#include "nbekcf/ccim.hpp"

#include <algorithm>

#include "nbekcf/parallel.hpp"

namespace nbekcf {

FundamentalMatrixSet fundamental_matrices(const FeatureMap& x0, const FeatureMap& z) {
    const int m = x0.rows();
    const int n = x0.cols();
    const int rows = z.rows();
    const int cols = z.cols();
    const int d = x0.channels();
    if (m > rows || n > cols) {
        throw std::invalid_argument("fundamental_matrices: filter larger than the search map");
    }
    if (d != z.channels()) {
        throw std::invalid_argument("fundamental_matrices: channel counts differ");
    }
    FundamentalMatrixSet fm;
    fm.m = m;
    fm.n = n;
    fm.map_rows = rows;
    fm.map_cols = cols;
    fm.mats.assign(static_cast<std::size_t>(m) * n, RealMatrix());
    parallel_for(0, m * n, [&](int idx) {
        const int i = idx / n;
        const int j = idx % n;
        const double* w = x0.position(i, j);
        // b(r, c) = sum_d w_d * z((r + i) mod rows, (c + j) mod cols, d):
        // the weighted channel sum shifted up by i and left by j, written
        // directly at its shifted position.
        RealMatrix b(rows, cols);
        for (int r = 0; r < rows; ++r) {
            const int sr = r + i < rows ? r + i : r + i - rows;
            double* out_row = b.data().data() + static_cast<std::size_t>(r) * cols;
            for (int c = 0; c < cols; ++c) {
                const int sc = c + j < cols ? c + j : c + j - cols;
                const double* v = z.position(sr, sc);
                double acc = 0.0;
                for (int k = 0; k < d; ++k) {
                    acc += w[k] * v[k];
                }
                out_row[c] = acc;
            }
        }
        fm.mats[idx] = std::move(b);
    });
    return fm;
}

IntegralMatrix integral_matrix(FundamentalMatrixSet fm) {
    const int m = fm.m;
    const int n = fm.n;
    if (fm.mats.size() != static_cast<std::size_t>(m) * n || m < 1 || n < 1) {
        throw std::invalid_argument("integral_matrix: malformed fundamental set");
    }
    IntegralMatrix im;
    im.m = m;
    im.n = n;
    im.map_rows = fm.map_rows;
    im.map_cols = fm.map_cols;
    im.mats = std::move(fm.mats);
    const std::size_t len = im.mats.empty() ? 0 : im.mats.front().data().size();
    auto add_into = [len](RealMatrix& dst, const RealMatrix& src) {
        double* a = dst.data().data();
        const double* b = src.data().data();
        for (std::size_t p = 0; p < len; ++p) {
            a[p] += b[p];
        }
    };
    for (int i = 1; i < m; ++i) {
        add_into(im.at(i, 0), im.at(i - 1, 0));
    }
    for (int j = 1; j < n; ++j) {
        add_into(im.at(0, j), im.at(0, j - 1));
    }
    for (int i = 1; i < m; ++i) {
        for (int j = 1; j < n; ++j) {
            double* out = im.at(i, j).data().data();
            const double* up = im.at(i - 1, j).data().data();
            const double* left = im.at(i, j - 1).data().data();
            const double* diag = im.at(i - 1, j - 1).data().data();
            for (std::size_t p = 0; p < len; ++p) {
                out[p] += up[p] + left[p] - diag[p];
            }
        }
    }
    return im;
}

CorrelationStack circulant_correlation(const FeatureMap& x0, const FeatureMap& z) {
    IntegralMatrix im = integral_matrix(fundamental_matrices(x0, z));
    const int m = im.m;
    const int n = im.n;
    const int rows = im.map_rows;
    const int cols = im.map_cols;
    const int out_rows = rows - m + 1;
    const int out_cols = cols - n + 1;
    CorrelationStack cs;
    cs.m = m;
    cs.n = n;
    cs.out_rows = out_rows;
    cs.out_cols = out_cols;
    cs.maps.assign(static_cast<std::size_t>(m) * n, RealMatrix());
    parallel_for(0, m * n, [&](int idx) {
        const int ip = idx / n;
        const int jp = idx % n;
        // Integral-matrix corners for the four index quadrants of the shifted
        // filter: contributions from filter cells that stay in place (base),
        // wrap across rows only, across columns only, or across both.
        const RealMatrix& t_full = im.at(m - 1, n - 1);
        const RealMatrix& t_cols = im.at(m - 1, n - jp - 1);
        const RealMatrix& t_rows = im.at(m - ip - 1, n - 1);
        const RealMatrix& t_base = im.at(m - ip - 1, n - jp - 1);
        auto row_of = [cols](const RealMatrix& t, int r) {
            return t.data().data() + static_cast<std::size_t>(r) * cols;
        };

        // Only the top-left out_rows x out_cols block of the realigned sum
        // describes valid dense windows, so nothing else is materialized.
        // Inside that block the (ip, jp) offsets never wrap, and the wrapped
        // offsets (ip - m, jp - n) cross the boundary exactly once, so every
        // inner loop runs over one or two contiguous spans.
        RealMatrix out(out_rows, out_cols);
        const int col_split = std::min(n - jp, out_cols);
        const int col_wrap = cols - (n - jp);
        for (int r = 0; r < out_rows; ++r) {
            const int rj = r + ip;
            const int rl = r < m - ip ? r + rows - (m - ip) : r - (m - ip);
            double* dst = out.data().data() + static_cast<std::size_t>(r) * out_cols;

            const double* base_j = row_of(t_base, rj) + jp;
            std::copy(base_j, base_j + out_cols, dst);
            if (jp > 0) {
                const double* rows_r = row_of(t_rows, rj);
                const double* base_r = row_of(t_base, rj);
                for (int c = 0; c < col_split; ++c) {
                    dst[c] += rows_r[c + col_wrap] - base_r[c + col_wrap];
                }
                for (int c = col_split; c < out_cols; ++c) {
                    dst[c] += rows_r[c - (n - jp)] - base_r[c - (n - jp)];
                }
            }
            if (ip > 0) {
                const double* cols_l = row_of(t_cols, rl) + jp;
                const double* base_l = row_of(t_base, rl) + jp;
                for (int c = 0; c < out_cols; ++c) {
                    dst[c] += cols_l[c] - base_l[c];
                }
                if (jp > 0) {
                    const double* full_l = row_of(t_full, rl);
                    const double* colw_l = row_of(t_cols, rl);
                    const double* roww_l = row_of(t_rows, rl);
                    const double* basw_l = row_of(t_base, rl);
                    for (int c = 0; c < col_split; ++c) {
                        const int q = c + col_wrap;
                        dst[c] += full_l[q] - colw_l[q] - roww_l[q] + basw_l[q];
                    }
                    for (int c = col_split; c < out_cols; ++c) {
                        const int q = c - (n - jp);
                        dst[c] += full_l[q] - colw_l[q] - roww_l[q] + basw_l[q];
                    }
                }
            }
        }
        cs.maps[idx] = std::move(out);
    });
    return cs;
}

}  // namespace nbekcf
