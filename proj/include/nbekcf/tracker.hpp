#pragma once

#include <vector>

#include "nbekcf/core.hpp"
#include "nbekcf/kernel.hpp"
#include "nbekcf/regression.hpp"

namespace nbekcf {

struct TrackerConfig {
    int cell_size = 4;
    int feature_bins = 8;  // orientation bins; feature channels = bins + 1
    double search_factor = 3.0;  // search window side relative to sqrt(m * n), in cells
    double label_bandwidth_factor = 0.1;  // label bandwidth relative to sqrt(m * n)
    double lambda = 1e-4;
    double gamma = 0.01;
    // Targets smaller than this pixel area get the whole sequence upsampled
    // by sqrt(area threshold / target area), fixed at the first frame.
    double small_target_area = 1000.0;
    int scale_steps = 1;       // odd; 1 keeps a single fixed scale
    double scale_ratio = 1.02;  // relative scale per pyramid step
    // Blend the template toward each new frame's central crop at rate gamma.
    // Off by default: the first-frame template is kept verbatim.
    bool template_interpolation = false;
    KernelConfig kernel;
};

struct TrackerState {
    TrackerConfig config;
    ModelState model;
    FeatureMap base_filter;  // m x n x D template
    LabelMap label;          // shared by every training frame
    BoundingBox target_box;   // current estimate, original frame coordinates
    BoundingBox initial_box;  // size reference for the cumulative scale
    double resize_ratio = 1.0;
    int m = 0;  // filter rows in cells
    int n = 0;  // filter cols in cells
    int window_rows = 0;  // search window rows in cells
    int window_cols = 0;  // search window cols in cells
    int peak_row = 0;  // training peak on the sample grid
    int peak_col = 0;
};

struct Detection {
    BoundingBox box;
    RealMatrix response;  // dense-window response at the selected scale
    double peak = 0.0;
};

// Gaussian bump over the sample grid: exactly 1 at (peak_row, peak_col) and
// exp(-((di^2 + dj^2) / (2 bandwidth^2))) elsewhere, distances in grid cells.
LabelMap gaussian_label_map(int rows, int cols, int peak_row, int peak_col, double bandwidth);

// width x height crop centered at (center_x, center_y); the origin rounds to
// the nearest pixel and out-of-frame reads replicate the nearest edge pixel.
GrayImage extract_subwindow(const GrayImage& image, double center_x, double center_y, int width,
                            int height);

// Bilinear resampling with pixel-center alignment.
GrayImage resize_bilinear(const GrayImage& image, int height, int width);

// Cell-grid features: per cell, a magnitude-weighted histogram over
// `bins` unsigned gradient orientations in [0, pi), L2-normalized, plus one
// unnormalized mean-intensity channel. The patch is padded to whole cells by
// edge replication; gradients are central differences with replicated
// borders.
FeatureMap extract_features(const GrayImage& patch, int cell_size, int bins);

TrackerState init_tracker(const GrayImage& frame, const BoundingBox& init_box,
                          const TrackerConfig& config);

// Locates the target in a new frame without touching the model. A degenerate
// flat response keeps the previous box.
Detection detect(const TrackerState& state, const GrayImage& frame);

// Folds the frame at the located box into the regression model.
void update(TrackerState& state, const GrayImage& frame, const BoundingBox& located_box);

// Runs init / detect / update over a frame list. Output boxes are clamped to
// the frame bounds; element 0 is the initial box itself.
std::vector<BoundingBox> track_sequence(const std::vector<GrayImage>& frames,
                                        const BoundingBox& init_box, const TrackerConfig& config);

}  // namespace nbekcf
