#pragma once

#include <string>
#include <vector>

#include "nbekcf/core.hpp"
#include "nbekcf/eval.hpp"

namespace nbekcf {

// Loads a PGM (P2/P5) or PPM (P3/P6) file as a grayscale image with
// intensities scaled to [0, 1]. Color pixels reduce to luma
// 0.299 R + 0.587 G + 0.114 B. Throws std::runtime_error on missing files,
// unsupported magic numbers, malformed headers or truncated pixel data.
GrayImage load_image(const std::string& path);

// Parses one box per line, fields x,y,w,h separated by commas and/or
// whitespace. Input coordinates are 1-indexed; the returned boxes are
// 0-indexed. Blank lines are skipped; anything else malformed reports its
// line number.
std::vector<BoundingBox> load_groundtruth(const std::string& path);

// Writes predictions as CSV with header "frame,x,y,w,h"; frame numbers start
// at 1 and coordinates carry four decimal places. Output bytes depend only on
// the box list.
void write_results(const std::string& path, const std::vector<BoundingBox>& boxes);

// Reads a CSV produced by write_results.
std::vector<BoundingBox> load_results(const std::string& path);

// Writes the metrics as a JSON object with one key per TrackingMetrics field.
void write_metrics(const std::string& path, const TrackingMetrics& metrics);

// Frame files (.pgm/.ppm, case-insensitive) in a directory, sorted by name.
std::vector<std::string> list_sequence_frames(const std::string& dir);

}  // namespace nbekcf
