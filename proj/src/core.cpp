#include "nbekcf/core.hpp"

#include <cmath>

namespace nbekcf {

namespace {

void check_finite(const std::vector<double>& data, const char* what) {
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(what) + ": non-finite value");
        }
    }
}

}  // namespace

RealMatrix::RealMatrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows < 0 || cols < 0) {
        throw std::invalid_argument("RealMatrix: negative dimensions");
    }
    if (data_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw std::invalid_argument("RealMatrix: data length does not match dimensions");
    }
    check_finite(data_, "RealMatrix");
}

FeatureMap::FeatureMap(int rows, int cols, int channels, std::vector<double> data)
    : rows_(rows), cols_(cols), channels_(channels), data_(std::move(data)) {
    if (rows < 1 || cols < 1 || channels < 1) {
        throw std::invalid_argument("FeatureMap: dimensions must be positive");
    }
    const std::size_t expected = static_cast<std::size_t>(rows) * cols * channels;
    if (data_.size() != expected) {
        throw std::invalid_argument("FeatureMap: data length does not match dimensions");
    }
    check_finite(data_, "FeatureMap");
}

FeatureMap make_feature_map(int rows, int cols, int channels, std::vector<double> data) {
    return FeatureMap(rows, cols, channels, std::move(data));
}

FeatureMap crop_feature_map(const FeatureMap& map, int i0, int j0, int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("crop_feature_map: crop dimensions must be positive");
    }
    if (i0 < 0 || j0 < 0 || i0 + rows > map.rows() || j0 + cols > map.cols()) {
        throw std::invalid_argument("crop_feature_map: crop outside the map");
    }
    const int d = map.channels();
    std::vector<double> out(static_cast<std::size_t>(rows) * cols * d);
    for (int i = 0; i < rows; ++i) {
        const double* src = map.position(i0 + i, j0);
        std::copy(src, src + static_cast<std::size_t>(cols) * d,
                  out.begin() + static_cast<std::size_t>(i) * cols * d);
    }
    return FeatureMap(rows, cols, d, std::move(out));
}

GrayImage::GrayImage(int height, int width, std::vector<double> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
    if (height < 1 || width < 1) {
        throw std::invalid_argument("GrayImage: dimensions must be positive");
    }
    if (pixels_.size() != static_cast<std::size_t>(height) * width) {
        throw std::invalid_argument("GrayImage: pixel count does not match dimensions");
    }
    for (double v : pixels_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("GrayImage: intensity outside [0, 1]");
        }
    }
}

}  // namespace nbekcf
