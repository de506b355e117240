#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbekcf {

// Dense row-major matrix of doubles. Construction validates shape; the data
// constructor additionally rejects non-finite values. Instances shared across
// threads are treated as read-only after they are filled.
class RealMatrix {
public:
    RealMatrix() = default;

    RealMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) {
            throw std::invalid_argument("RealMatrix: negative dimensions");
        }
        data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
    }

    RealMatrix(int rows, int cols, std::vector<double> data);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    double& operator()(int i, int j) {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// Multi-channel feature grid, rows x cols x channels, stored row-major with
// the channel index innermost: data[(i*cols + j)*channels + d]. The layout
// keeps the per-position channel vector contiguous, which is what the
// correlation and norm loops iterate over at fixed (i, j).
class FeatureMap {
public:
    FeatureMap() = default;
    FeatureMap(int rows, int cols, int channels, std::vector<double> data);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int channels() const { return channels_; }

    double at(int i, int j, int d) const {
        return data_[index(i, j, d)];
    }

    // Contiguous channel vector at position (i, j).
    const double* position(int i, int j) const {
        return data_.data() + index(i, j, 0);
    }

    const std::vector<double>& data() const { return data_; }

    std::size_t index(int i, int j, int d) const {
        return (static_cast<std::size_t>(i) * cols_ + j) * channels_ + d;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

// Builds a feature map after validating dimensions, length and finiteness.
FeatureMap make_feature_map(int rows, int cols, int channels, std::vector<double> data);

// Copies the rows x cols sub-block of a feature map starting at (i0, j0).
FeatureMap crop_feature_map(const FeatureMap& map, int i0, int j0, int rows, int cols);

// Axis-aligned box in pixel coordinates; (x, y) is the top-left corner.
struct BoundingBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double center_x() const { return x + w / 2.0; }
    double center_y() const { return y + h / 2.0; }
};

// Single-channel image with intensities in [0, 1], row-major.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int height, int width, std::vector<double> pixels);

    int height() const { return height_; }
    int width() const { return width_; }

    double at(int i, int j) const {
        return pixels_[static_cast<std::size_t>(i) * width_ + j];
    }
    double& at(int i, int j) {
        return pixels_[static_cast<std::size_t>(i) * width_ + j];
    }

    const std::vector<double>& pixels() const { return pixels_; }

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<double> pixels_;
};

}  // namespace nbekcf
