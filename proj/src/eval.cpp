#include "nbekcf/eval.hpp"

#include <cmath>
#include <stdexcept>

namespace nbekcf {

namespace {

void validate_box(const BoundingBox& b, const char* what) {
    if (!(b.w > 0.0 && b.h > 0.0) || !std::isfinite(b.x) || !std::isfinite(b.y) ||
        !std::isfinite(b.w) || !std::isfinite(b.h)) {
        throw std::invalid_argument(std::string(what) + ": box must have positive finite size");
    }
}

}  // namespace

double center_error(const BoundingBox& a, const BoundingBox& b) {
    validate_box(a, "center_error");
    validate_box(b, "center_error");
    const double dx = a.center_x() - b.center_x();
    const double dy = a.center_y() - b.center_y();
    return std::sqrt(dx * dx + dy * dy);
}

double overlap_ratio(const BoundingBox& a, const BoundingBox& b) {
    validate_box(a, "overlap_ratio");
    validate_box(b, "overlap_ratio");
    const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
    const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
    const double inter = ix * iy;
    const double uni = a.w * a.h + b.w * b.h - inter;
    return inter / uni;
}

TrackingMetrics summarize(const std::vector<BoundingBox>& predictions,
                          const std::vector<BoundingBox>& groundtruth) {
    if (predictions.empty() || predictions.size() != groundtruth.size()) {
        throw std::invalid_argument("summarize: need equally many predictions and ground truths");
    }
    const std::size_t count = predictions.size();
    std::vector<double> errors(count);
    std::vector<double> overlaps(count);
    double error_sum = 0.0;
    double overlap_sum = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
        errors[t] = center_error(predictions[t], groundtruth[t]);
        overlaps[t] = overlap_ratio(predictions[t], groundtruth[t]);
        error_sum += errors[t];
        overlap_sum += overlaps[t];
    }

    TrackingMetrics metrics;
    metrics.mean_center_error = error_sum / static_cast<double>(count);
    metrics.mean_overlap = overlap_sum / static_cast<double>(count);

    metrics.precision_curve.resize(51);
    for (int k = 0; k <= 50; ++k) {
        int hits = 0;
        for (double e : errors) {
            if (e <= static_cast<double>(k)) {
                ++hits;
            }
        }
        metrics.precision_curve[k] = static_cast<double>(hits) / static_cast<double>(count);
    }
    metrics.distance_precision = metrics.precision_curve[20];

    metrics.success_curve.resize(21);
    double success_sum = 0.0;
    for (int k = 0; k <= 20; ++k) {
        const double threshold = 0.05 * k;
        int hits = 0;
        for (double o : overlaps) {
            if (o > threshold) {
                ++hits;
            }
        }
        metrics.success_curve[k] = static_cast<double>(hits) / static_cast<double>(count);
        success_sum += metrics.success_curve[k];
    }
    metrics.auc = success_sum / 21.0;

    int op_hits = 0;
    for (double o : overlaps) {
        if (o > 0.5) {
            ++op_hits;
        }
    }
    metrics.overlap_precision = static_cast<double>(op_hits) / static_cast<double>(count);
    return metrics;
}

}  // namespace nbekcf
