#include "nbekcf/acsii.hpp"

namespace nbekcf {

RealMatrix squared_channel_sum(const FeatureMap& z) {
    const int rows = z.rows();
    const int cols = z.cols();
    const int d = z.channels();
    RealMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double* v = z.position(i, j);
            double s = 0.0;
            for (int k = 0; k < d; ++k) {
                s += v[k] * v[k];
            }
            a(i, j) = s;
        }
    }
    return a;
}

SquaredIntegralImage integral_image(const RealMatrix& a) {
    const int rows = a.rows();
    const int cols = a.cols();
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("integral_image: empty input");
    }
    RealMatrix i_mat(rows, cols);
    i_mat(0, 0) = a(0, 0);
    for (int i = 1; i < rows; ++i) {
        i_mat(i, 0) = i_mat(i - 1, 0) + a(i, 0);
    }
    for (int j = 1; j < cols; ++j) {
        i_mat(0, j) = i_mat(0, j - 1) + a(0, j);
    }
    for (int i = 1; i < rows; ++i) {
        for (int j = 1; j < cols; ++j) {
            i_mat(i, j) = i_mat(i - 1, j) + i_mat(i, j - 1) - i_mat(i - 1, j - 1) + a(i, j);
        }
    }
    return SquaredIntegralImage{std::move(i_mat)};
}

RealMatrix autocorrelation(const FeatureMap& z, int m, int n) {
    const int rows = z.rows();
    const int cols = z.cols();
    if (m < 1 || n < 1 || m > rows || n > cols) {
        throw std::invalid_argument("autocorrelation: window does not fit the map");
    }
    const SquaredIntegralImage ii = integral_image(squared_channel_sum(z));
    const RealMatrix& t = ii.values;
    const int out_rows = rows - m + 1;
    const int out_cols = cols - n + 1;
    RealMatrix b(out_rows, out_cols);
    b(0, 0) = t(m - 1, n - 1);
    for (int i = 1; i < out_rows; ++i) {
        b(i, 0) = t(i + m - 1, n - 1) - t(i - 1, n - 1);
    }
    for (int j = 1; j < out_cols; ++j) {
        b(0, j) = t(m - 1, j + n - 1) - t(m - 1, j - 1);
    }
    for (int i = 1; i < out_rows; ++i) {
        for (int j = 1; j < out_cols; ++j) {
            b(i, j) = t(i + m - 1, j + n - 1) - t(i - 1, j + n - 1) - t(i + m - 1, j - 1) +
                      t(i - 1, j - 1);
        }
    }
    return b;
}

}  // namespace nbekcf
