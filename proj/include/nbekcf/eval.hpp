#pragma once

#include <vector>

#include "nbekcf/core.hpp"

namespace nbekcf {

// Sequence-level tracking quality summary. Precision counts frames whose
// center error is <= the threshold; success counts frames whose overlap is
// strictly > the threshold.
struct TrackingMetrics {
    double mean_center_error = 0.0;
    double distance_precision = 0.0;  // precision at 20 pixels
    double mean_overlap = 0.0;
    double overlap_precision = 0.0;  // success at overlap 0.5
    double auc = 0.0;                // mean of the success curve samples
    std::vector<double> precision_curve;  // thresholds 0, 1, ..., 50 pixels
    std::vector<double> success_curve;    // thresholds 0, 0.05, ..., 1
};

// Euclidean distance between box centers.
double center_error(const BoundingBox& a, const BoundingBox& b);

// Intersection over union; 0 when the boxes are disjoint.
double overlap_ratio(const BoundingBox& a, const BoundingBox& b);

// Per-sequence metrics over aligned prediction and ground-truth lists.
TrackingMetrics summarize(const std::vector<BoundingBox>& predictions,
                          const std::vector<BoundingBox>& groundtruth);

}  // namespace nbekcf
