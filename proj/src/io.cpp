#include "nbekcf/io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nbekcf {

namespace {

// Token reader for PNM headers: skips whitespace and '#' comments.
class PnmHeaderReader {
public:
    explicit PnmHeaderReader(std::istream& in, const std::string& path) : in_(in), path_(path) {}

    std::string token() {
        int c = in_.get();
        while (c != EOF) {
            if (c == '#') {
                while (c != EOF && c != '\n') {
                    c = in_.get();
                }
            } else if (std::isspace(c)) {
                c = in_.get();
                continue;
            } else {
                break;
            }
            c = in_.get();
        }
        if (c == EOF) {
            throw std::runtime_error(path_ + ": truncated header");
        }
        std::string t;
        while (c != EOF && !std::isspace(c)) {
            t.push_back(static_cast<char>(c));
            c = in_.get();
        }
        return t;
    }

    int positive_int(const char* what) {
        const std::string t = token();
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t, &used);
        } catch (const std::exception&) {
            throw std::runtime_error(path_ + ": malformed " + what);
        }
        if (used != t.size() || v < 1) {
            throw std::runtime_error(path_ + ": malformed " + what);
        }
        return static_cast<int>(v);
    }

private:
    std::istream& in_;
    const std::string& path_;
};

double scale_sample(long v, int maxval, const std::string& path) {
    if (v < 0 || v > maxval) {
        throw std::runtime_error(path + ": sample value outside [0, maxval]");
    }
    return static_cast<double>(v) / maxval;
}

long read_raw_sample(std::istream& in, int bytes, const std::string& path) {
    int hi = in.get();
    if (hi == EOF) {
        throw std::runtime_error(path + ": truncated pixel data");
    }
    if (bytes == 1) {
        return hi;
    }
    const int lo = in.get();
    if (lo == EOF) {
        throw std::runtime_error(path + ": truncated pixel data");
    }
    return static_cast<long>(hi) * 256 + lo;
}

long read_ascii_sample(std::istream& in, const std::string& path) {
    long v = 0;
    if (!(in >> v)) {
        throw std::runtime_error(path + ": truncated pixel data");
    }
    return v;
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

GrayImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(path + ": cannot open file");
    }
    PnmHeaderReader header(in, path);
    const std::string magic = header.token();
    const bool color = magic == "P3" || magic == "P6";
    const bool binary = magic == "P5" || magic == "P6";
    if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6") {
        throw std::runtime_error(path + ": unsupported image format '" + magic + "'");
    }
    const int width = header.positive_int("width");
    const int height = header.positive_int("height");
    const int maxval = header.positive_int("maxval");
    if (maxval > 65535) {
        throw std::runtime_error(path + ": maxval out of range");
    }
    const int bytes = maxval < 256 ? 1 : 2;
    // The single whitespace byte after maxval was consumed by the token
    // reader for ASCII variants; for raw variants it terminated the token.

    std::vector<double> pixels;
    pixels.reserve(static_cast<std::size_t>(width) * height);
    const std::size_t count = static_cast<std::size_t>(width) * height;
    for (std::size_t p = 0; p < count; ++p) {
        if (color) {
            long r, g, b;
            if (binary) {
                r = read_raw_sample(in, bytes, path);
                g = read_raw_sample(in, bytes, path);
                b = read_raw_sample(in, bytes, path);
            } else {
                r = read_ascii_sample(in, path);
                g = read_ascii_sample(in, path);
                b = read_ascii_sample(in, path);
            }
            const double luma = 0.299 * scale_sample(r, maxval, path) +
                                0.587 * scale_sample(g, maxval, path) +
                                0.114 * scale_sample(b, maxval, path);
            pixels.push_back(clamp01(luma));
        } else {
            const long v = binary ? read_raw_sample(in, bytes, path) : read_ascii_sample(in, path);
            pixels.push_back(clamp01(scale_sample(v, maxval, path)));
        }
    }
    return GrayImage(height, width, std::move(pixels));
}

std::vector<BoundingBox> load_groundtruth(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(path + ": cannot open file");
    }
    std::vector<BoundingBox> boxes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        for (char& c : line) {
            if (c == ',' || c == '\t' || c == '\r') {
                c = ' ';
            }
        }
        std::istringstream fields(line);
        double x, y, w, h;
        if (!(fields >> x)) {
            continue;  // blank line
        }
        std::string extra;
        if (!(fields >> y >> w >> h) || (fields >> extra)) {
            throw std::runtime_error(path + ": malformed box on line " + std::to_string(line_no));
        }
        if (!(w > 0.0 && h > 0.0)) {
            throw std::runtime_error(path + ": non-positive box size on line " +
                                     std::to_string(line_no));
        }
        boxes.push_back(BoundingBox{x - 1.0, y - 1.0, w, h});
    }
    if (boxes.empty()) {
        throw std::runtime_error(path + ": no boxes found");
    }
    return boxes;
}

void write_results(const std::string& path, const std::vector<BoundingBox>& boxes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(path + ": cannot open file for writing");
    }
    out << "frame,x,y,w,h\n";
    char row[160];
    for (std::size_t t = 0; t < boxes.size(); ++t) {
        const BoundingBox& b = boxes[t];
        std::snprintf(row, sizeof(row), "%zu,%.4f,%.4f,%.4f,%.4f\n", t + 1, b.x, b.y, b.w, b.h);
        out << row;
    }
    if (!out) {
        throw std::runtime_error(path + ": write failed");
    }
}

std::vector<BoundingBox> load_results(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(path + ": cannot open file");
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("frame", 0) != 0) {
        throw std::runtime_error(path + ": missing results header");
    }
    std::vector<BoundingBox> boxes;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        for (char& c : line) {
            if (c == ',' || c == '\r') {
                c = ' ';
            }
        }
        std::istringstream fields(line);
        long frame;
        double x, y, w, h;
        if (!(fields >> frame)) {
            continue;
        }
        if (!(fields >> x >> y >> w >> h)) {
            throw std::runtime_error(path + ": malformed row on line " + std::to_string(line_no));
        }
        boxes.push_back(BoundingBox{x, y, w, h});
    }
    return boxes;
}

void write_metrics(const std::string& path, const TrackingMetrics& metrics) {
    nlohmann::ordered_json j;
    j["mean_center_error"] = metrics.mean_center_error;
    j["distance_precision"] = metrics.distance_precision;
    j["mean_overlap"] = metrics.mean_overlap;
    j["overlap_precision"] = metrics.overlap_precision;
    j["auc"] = metrics.auc;
    j["precision_curve"] = metrics.precision_curve;
    j["success_curve"] = metrics.success_curve;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(path + ": cannot open file for writing");
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error(path + ": write failed");
    }
}

std::vector<std::string> list_sequence_frames(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw std::runtime_error(dir + ": not a directory");
    }
    std::vector<std::string> frames;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == ".pgm" || ext == ".ppm") {
            frames.push_back(entry.path().string());
        }
    }
    std::sort(frames.begin(), frames.end());
    return frames;
}

}  // namespace nbekcf
