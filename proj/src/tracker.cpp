#include "nbekcf/tracker.hpp"

#include <cmath>

namespace nbekcf {

namespace {

constexpr double kPi = 3.14159265358979323846;

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

int clamp_index(int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); }

void validate_config(const TrackerConfig& cfg) {
    if (cfg.cell_size < 1) {
        throw std::invalid_argument("tracker: cell_size must be >= 1");
    }
    if (cfg.feature_bins < 1) {
        throw std::invalid_argument("tracker: feature_bins must be >= 1");
    }
    if (!(cfg.search_factor >= 1.0)) {
        throw std::invalid_argument("tracker: search_factor must be >= 1");
    }
    if (!(cfg.label_bandwidth_factor > 0.0)) {
        throw std::invalid_argument("tracker: label_bandwidth_factor must be positive");
    }
    if (cfg.scale_steps < 1 || cfg.scale_steps % 2 == 0) {
        throw std::invalid_argument("tracker: scale_steps must be a positive odd number");
    }
    if (cfg.scale_steps > 1 && !(cfg.scale_ratio > 1.0)) {
        throw std::invalid_argument("tracker: scale_ratio must exceed 1");
    }
    if (!(cfg.small_target_area >= 0.0)) {
        throw std::invalid_argument("tracker: small_target_area must be non-negative");
    }
}

// Search window features at a given center and pixel size, resampled to the
// canonical cell grid when the window is off-scale.
FeatureMap window_features(const GrayImage& frame, const TrackerState& state, double center_x,
                           double center_y, int win_w, int win_h) {
    const int cell = state.config.cell_size;
    const int canon_w = state.window_cols * cell;
    const int canon_h = state.window_rows * cell;
    GrayImage window = extract_subwindow(frame, center_x, center_y, win_w, win_h);
    if (win_w != canon_w || win_h != canon_h) {
        window = resize_bilinear(window, canon_h, canon_w);
    }
    return extract_features(window, cell, state.config.feature_bins);
}

BoundingBox clamp_into_frame(BoundingBox box, int width, int height) {
    const double max_x = std::max(0.0, static_cast<double>(width) - box.w);
    const double max_y = std::max(0.0, static_cast<double>(height) - box.h);
    box.x = std::min(std::max(box.x, 0.0), max_x);
    box.y = std::min(std::max(box.y, 0.0), max_y);
    return box;
}

}  // namespace

LabelMap gaussian_label_map(int rows, int cols, int peak_row, int peak_col, double bandwidth) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("gaussian_label_map: dimensions must be positive");
    }
    if (peak_row < 0 || peak_row >= rows || peak_col < 0 || peak_col >= cols) {
        throw std::invalid_argument("gaussian_label_map: peak outside the grid");
    }
    if (!(bandwidth > 0.0 && std::isfinite(bandwidth))) {
        throw std::invalid_argument("gaussian_label_map: bandwidth must be positive");
    }
    std::vector<double> values(static_cast<std::size_t>(rows) * cols);
    const double denom = 2.0 * bandwidth * bandwidth;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double di = i - peak_row;
            const double dj = j - peak_col;
            values[static_cast<std::size_t>(i) * cols + j] = std::exp(-(di * di + dj * dj) / denom);
        }
    }
    values[static_cast<std::size_t>(peak_row) * cols + peak_col] = 1.0;
    return LabelMap(rows, cols, std::move(values));
}

GrayImage extract_subwindow(const GrayImage& image, double center_x, double center_y, int width,
                            int height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("extract_subwindow: window size must be positive");
    }
    const long origin_x = std::lround(center_x - width / 2.0);
    const long origin_y = std::lround(center_y - height / 2.0);
    std::vector<double> pixels(static_cast<std::size_t>(width) * height);
    for (int i = 0; i < height; ++i) {
        const int si = clamp_index(static_cast<int>(origin_y) + i, image.height() - 1);
        for (int j = 0; j < width; ++j) {
            const int sj = clamp_index(static_cast<int>(origin_x) + j, image.width() - 1);
            pixels[static_cast<std::size_t>(i) * width + j] = image.at(si, sj);
        }
    }
    return GrayImage(height, width, std::move(pixels));
}

GrayImage resize_bilinear(const GrayImage& image, int height, int width) {
    if (height < 1 || width < 1) {
        throw std::invalid_argument("resize_bilinear: output size must be positive");
    }
    const double scale_y = static_cast<double>(image.height()) / height;
    const double scale_x = static_cast<double>(image.width()) / width;
    std::vector<double> pixels(static_cast<std::size_t>(width) * height);
    for (int i = 0; i < height; ++i) {
        double sy = (i + 0.5) * scale_y - 0.5;
        sy = std::min(std::max(sy, 0.0), static_cast<double>(image.height() - 1));
        const int y0 = static_cast<int>(sy);
        const int y1 = std::min(y0 + 1, image.height() - 1);
        const double fy = sy - y0;
        for (int j = 0; j < width; ++j) {
            double sx = (j + 0.5) * scale_x - 0.5;
            sx = std::min(std::max(sx, 0.0), static_cast<double>(image.width() - 1));
            const int x0 = static_cast<int>(sx);
            const int x1 = std::min(x0 + 1, image.width() - 1);
            const double fx = sx - x0;
            const double top = image.at(y0, x0) * (1.0 - fx) + image.at(y0, x1) * fx;
            const double bottom = image.at(y1, x0) * (1.0 - fx) + image.at(y1, x1) * fx;
            pixels[static_cast<std::size_t>(i) * width + j] = top * (1.0 - fy) + bottom * fy;
        }
    }
    return GrayImage(height, width, std::move(pixels));
}

FeatureMap extract_features(const GrayImage& patch, int cell_size, int bins) {
    if (cell_size < 1 || bins < 1) {
        throw std::invalid_argument("extract_features: cell_size and bins must be >= 1");
    }
    const int cells_y = (patch.height() + cell_size - 1) / cell_size;
    const int cells_x = (patch.width() + cell_size - 1) / cell_size;
    const int padded_h = cells_y * cell_size;
    const int padded_w = cells_x * cell_size;

    // Edge-replicated padding to whole cells; reads below clamp into the
    // original patch, which realizes the same padding for the gradients.
    auto pixel = [&](int i, int j) {
        return patch.at(clamp_index(i, patch.height() - 1), clamp_index(j, patch.width() - 1));
    };

    const int channels = bins + 1;
    std::vector<double> data(static_cast<std::size_t>(cells_y) * cells_x * channels, 0.0);
    auto cell_values = [&](int ci, int cj) {
        return data.data() + (static_cast<std::size_t>(ci) * cells_x + cj) * channels;
    };

    for (int i = 0; i < padded_h; ++i) {
        const int ci = i / cell_size;
        for (int j = 0; j < padded_w; ++j) {
            const double gx = (pixel(i, j + 1) - pixel(i, j - 1)) / 2.0;
            const double gy = (pixel(i + 1, j) - pixel(i - 1, j)) / 2.0;
            const double mag = std::sqrt(gx * gx + gy * gy);
            double ori = std::atan2(gy, gx);
            if (ori < 0.0) {
                ori += kPi;
            }
            if (ori >= kPi) {
                ori -= kPi;
            }
            int bin = static_cast<int>(ori / kPi * bins);
            if (bin >= bins) {
                bin = bins - 1;
            }
            double* cell = cell_values(ci, j / cell_size);
            cell[bin] += mag;
            cell[bins] += pixel(i, j);
        }
    }

    const double cell_area = static_cast<double>(cell_size) * cell_size;
    for (int ci = 0; ci < cells_y; ++ci) {
        for (int cj = 0; cj < cells_x; ++cj) {
            double* cell = cell_values(ci, cj);
            double norm2 = 0.0;
            for (int b = 0; b < bins; ++b) {
                norm2 += cell[b] * cell[b];
            }
            const double inv = 1.0 / std::sqrt(norm2 + 1e-6);
            for (int b = 0; b < bins; ++b) {
                cell[b] *= inv;
            }
            cell[bins] /= cell_area;
        }
    }
    return FeatureMap(cells_y, cells_x, channels, std::move(data));
}

TrackerState init_tracker(const GrayImage& frame, const BoundingBox& init_box,
                          const TrackerConfig& config) {
    validate_config(config);
    if (!(init_box.w > 0.0 && init_box.h > 0.0)) {
        throw std::invalid_argument("init_tracker: box must have positive size");
    }
    if (init_box.x < 0.0 || init_box.y < 0.0 || init_box.x + init_box.w > frame.width() ||
        init_box.y + init_box.h > frame.height()) {
        throw std::invalid_argument("init_tracker: box outside the frame");
    }

    TrackerState state;
    state.config = config;
    state.target_box = init_box;
    state.initial_box = init_box;

    const double area = init_box.w * init_box.h;
    state.resize_ratio =
        area < config.small_target_area ? std::sqrt(config.small_target_area / area) : 1.0;

    const GrayImage* work = &frame;
    GrayImage resized;
    if (state.resize_ratio != 1.0) {
        resized = resize_bilinear(frame, round_half_up(frame.height() * state.resize_ratio),
                                  round_half_up(frame.width() * state.resize_ratio));
        work = &resized;
    }

    const int cell = config.cell_size;
    state.m = std::max(1, round_half_up(init_box.h * state.resize_ratio / cell));
    state.n = std::max(1, round_half_up(init_box.w * state.resize_ratio / cell));
    const int side = round_half_up(config.search_factor * std::sqrt(static_cast<double>(state.m) *
                                                                    static_cast<double>(state.n)));
    state.window_rows = std::max(side, state.m);
    state.window_cols = std::max(side, state.n);
    state.peak_row = (state.window_rows - state.m) / 2;
    state.peak_col = (state.window_cols - state.n) / 2;

    const FeatureMap z =
        window_features(*work, state, init_box.center_x() * state.resize_ratio,
                        init_box.center_y() * state.resize_ratio, state.window_cols * cell,
                        state.window_rows * cell);
    state.base_filter = crop_feature_map(z, state.peak_row, state.peak_col, state.m, state.n);

    const double bandwidth =
        config.label_bandwidth_factor * std::sqrt(static_cast<double>(state.m) * state.n);
    state.label = gaussian_label_map(state.window_rows - state.m + 1,
                                     state.window_cols - state.n + 1, state.peak_row,
                                     state.peak_col, bandwidth);

    const KernelMatrix k = kernel_matrix(state.base_filter, z, config.kernel);
    state.model = init_model(k, state.label, config.lambda, config.gamma);
    return state;
}

Detection detect(const TrackerState& state, const GrayImage& frame) {
    if (state.model.frame_count < 1) {
        throw std::invalid_argument("detect: tracker is not initialized");
    }
    const int cell = state.config.cell_size;
    const double ratio = state.resize_ratio;

    const GrayImage* work = &frame;
    GrayImage resized;
    if (ratio != 1.0) {
        resized = resize_bilinear(frame, round_half_up(frame.height() * ratio),
                                  round_half_up(frame.width() * ratio));
        work = &resized;
    }

    const double scale_now = state.target_box.w / state.initial_box.w;
    const double center_x = state.target_box.center_x() * ratio;
    const double center_y = state.target_box.center_y() * ratio;
    const int canon_w = state.window_cols * cell;
    const int canon_h = state.window_rows * cell;

    bool found = false;
    double best_peak = 0.0;
    double best_rel = 1.0;
    int best_row = 0;
    int best_col = 0;
    double best_fx = 1.0;
    double best_fy = 1.0;
    RealMatrix best_response;
    RealMatrix middle_response;

    const int half = state.config.scale_steps / 2;
    for (int step = -half; step <= half; ++step) {
        const double rel = std::pow(state.config.scale_ratio, step);
        const int win_w = std::max(1, static_cast<int>(std::lround(canon_w * scale_now * rel)));
        const int win_h = std::max(1, static_cast<int>(std::lround(canon_h * scale_now * rel)));
        const FeatureMap z = window_features(*work, state, center_x, center_y, win_w, win_h);
        const KernelMatrix k = kernel_matrix(state.base_filter, z, state.config.kernel);

        RealMatrix response(k.sample_rows, k.sample_cols);
        const std::vector<double>& alpha = state.model.alpha;
        for (int p = 0; p < k.rows; ++p) {
            const double* row = k.values.data() + static_cast<std::size_t>(p) * k.cols;
            double acc = 0.0;
            for (int c = 0; c < k.cols; ++c) {
                acc += row[c] * alpha[c];
            }
            response.data()[p] = acc;
        }

        double lo = response.data()[0];
        double hi = response.data()[0];
        int arg_row = 0;
        int arg_col = 0;
        for (int r = 0; r < response.rows(); ++r) {
            for (int c = 0; c < response.cols(); ++c) {
                const double v = response(r, c);
                if (v > hi) {
                    hi = v;
                    arg_row = r;
                    arg_col = c;
                }
                if (v < lo) {
                    lo = v;
                }
            }
        }
        if (step == 0) {
            middle_response = response;
        }
        if (!(hi > lo)) {
            continue;  // flat response carries no location evidence
        }
        if (!found || hi > best_peak) {
            found = true;
            best_peak = hi;
            best_rel = rel;
            best_row = arg_row;
            best_col = arg_col;
            best_fx = static_cast<double>(win_w) / canon_w;
            best_fy = static_cast<double>(win_h) / canon_h;
            best_response = std::move(response);
        }
    }

    if (!found) {
        return Detection{state.target_box, std::move(middle_response), 0.0};
    }

    const double shift_x = (best_col - state.peak_col) * cell * best_fx;
    const double shift_y = (best_row - state.peak_row) * cell * best_fy;
    const double new_cx = (center_x + shift_x) / ratio;
    const double new_cy = (center_y + shift_y) / ratio;
    const double new_w = state.target_box.w * best_rel;
    const double new_h = state.target_box.h * best_rel;
    return Detection{BoundingBox{new_cx - new_w / 2.0, new_cy - new_h / 2.0, new_w, new_h},
                     std::move(best_response), best_peak};
}

void update(TrackerState& state, const GrayImage& frame, const BoundingBox& located_box) {
    if (state.model.frame_count < 1) {
        throw std::invalid_argument("update: tracker is not initialized");
    }
    if (!(located_box.w > 0.0 && located_box.h > 0.0)) {
        throw std::invalid_argument("update: box must have positive size");
    }
    const int cell = state.config.cell_size;
    const double ratio = state.resize_ratio;

    const GrayImage* work = &frame;
    GrayImage resized;
    if (ratio != 1.0) {
        resized = resize_bilinear(frame, round_half_up(frame.height() * ratio),
                                  round_half_up(frame.width() * ratio));
        work = &resized;
    }

    state.target_box = located_box;
    const double scale_now = located_box.w / state.initial_box.w;
    const int win_w =
        std::max(1, static_cast<int>(std::lround(state.window_cols * cell * scale_now)));
    const int win_h =
        std::max(1, static_cast<int>(std::lround(state.window_rows * cell * scale_now)));
    const FeatureMap z = window_features(*work, state, located_box.center_x() * ratio,
                                         located_box.center_y() * ratio, win_w, win_h);
    const KernelMatrix k = kernel_matrix(state.base_filter, z, state.config.kernel);
    update_model(state.model, k, state.label);

    if (state.config.template_interpolation) {
        const FeatureMap fresh =
            crop_feature_map(z, state.peak_row, state.peak_col, state.m, state.n);
        const double g = state.config.gamma;
        std::vector<double> blended(state.base_filter.data().size());
        for (std::size_t e = 0; e < blended.size(); ++e) {
            blended[e] = (1.0 - g) * state.base_filter.data()[e] + g * fresh.data()[e];
        }
        state.base_filter =
            FeatureMap(state.m, state.n, state.base_filter.channels(), std::move(blended));
    }
}

std::vector<BoundingBox> track_sequence(const std::vector<GrayImage>& frames,
                                        const BoundingBox& init_box,
                                        const TrackerConfig& config) {
    if (frames.empty()) {
        throw std::invalid_argument("track_sequence: no frames");
    }
    std::vector<BoundingBox> boxes;
    boxes.reserve(frames.size());
    boxes.push_back(init_box);
    TrackerState state = init_tracker(frames.front(), init_box, config);
    for (std::size_t t = 1; t < frames.size(); ++t) {
        const Detection det = detect(state, frames[t]);
        const BoundingBox located =
            clamp_into_frame(det.box, frames[t].width(), frames[t].height());
        update(state, frames[t], located);
        boxes.push_back(located);
    }
    return boxes;
}

}  // namespace nbekcf
