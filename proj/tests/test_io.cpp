#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nbekcf/core.hpp"
#include "nbekcf/eval.hpp"
#include "nbekcf/io.hpp"
#include "test_support.hpp"

using nbekcf::BoundingBox;
using nbekcf::GrayImage;
using nbekcf::TrackingMetrics;
using nbekcf::load_groundtruth;
using nbekcf::load_image;
using nbekcf::load_results;
using nbekcf::write_metrics;
using nbekcf::write_results;

TEST_CASE("ASCII PGM with comments") {
    testsup::TempDir dir("io_p2");
    const std::string path = dir.file("a.pgm");
    testsup::write_text_file(path,
                             "P2\n# a comment\n3 2\n# another\n255\n"
                             "0 128 255\n64 32 16\n");
    GrayImage img = load_image(path);
    CHECK(img.height() == 2);
    CHECK(img.width() == 3);
    CHECK(img.at(0, 0) == 0.0);
    CHECK(img.at(0, 1) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
    CHECK(img.at(0, 2) == 1.0);
    CHECK(img.at(1, 0) == doctest::Approx(64.0 / 255.0).epsilon(1e-15));
}

TEST_CASE("binary PGM round trip") {
    testsup::TempDir dir("io_p5");
    std::vector<double> pixels;
    for (int k = 0; k < 6; ++k) {
        pixels.push_back((k * 40) / 255.0);
    }
    GrayImage original(2, 3, pixels);
    const std::string path = dir.file("b.pgm");
    testsup::write_pgm(path, original);
    GrayImage loaded = load_image(path);
    REQUIRE(loaded.height() == 2);
    REQUIRE(loaded.width() == 3);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(loaded.at(i, j) == original.at(i, j));
        }
    }
}

TEST_CASE("16-bit binary PGM uses big-endian samples") {
    testsup::TempDir dir("io_p5_16");
    const std::string path = dir.file("w.pgm");
    std::string content = "P5\n2 1\n65535\n";
    // Samples 0x1234 and 0xffff.
    content.push_back(static_cast<char>(0x12));
    content.push_back(static_cast<char>(0x34));
    content.push_back(static_cast<char>(0xff));
    content.push_back(static_cast<char>(0xff));
    testsup::write_text_file(path, content);
    GrayImage img = load_image(path);
    CHECK(img.at(0, 0) == doctest::Approx(4660.0 / 65535.0).epsilon(1e-15));
    CHECK(img.at(0, 1) == 1.0);
}

TEST_CASE("binary PPM reduces to luma") {
    testsup::TempDir dir("io_p6");
    const std::string path = dir.file("c.ppm");
    std::string content = "P6\n2 1\n255\n";
    // Pure red, pure green.
    const unsigned char px[6] = {255, 0, 0, 0, 255, 0};
    content.append(reinterpret_cast<const char*>(px), 6);
    testsup::write_text_file(path, content);
    GrayImage img = load_image(path);
    CHECK(img.at(0, 0) == doctest::Approx(0.299).epsilon(1e-12));
    CHECK(img.at(0, 1) == doctest::Approx(0.587).epsilon(1e-12));
}

TEST_CASE("ASCII PPM reduces to luma") {
    testsup::TempDir dir("io_p3");
    const std::string path = dir.file("d.ppm");
    testsup::write_text_file(path, "P3\n1 2\n255\n0 0 255\n255 255 255\n");
    GrayImage img = load_image(path);
    CHECK(img.at(0, 0) == doctest::Approx(0.114).epsilon(1e-12));
    CHECK(img.at(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gray PPM equals one third of each channel weight sum") {
    // Equal channels: luma weights sum to 1, so the value is the gray level.
    testsup::TempDir dir("io_gray_ppm");
    std::vector<double> pixels = {0.0, 100.0 / 255.0, 1.0, 50.0 / 255.0};
    GrayImage original(2, 2, pixels);
    const std::string path = dir.file("e.ppm");
    testsup::write_gray_ppm(path, original);
    GrayImage loaded = load_image(path);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(loaded.at(i, j) == doctest::Approx(original.at(i, j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("image loader error cases") {
    testsup::TempDir dir("io_err");
    CHECK_THROWS_AS(load_image(dir.file("missing.pgm")), std::runtime_error);

    const std::string bad_magic = dir.file("m.pgm");
    testsup::write_text_file(bad_magic, "P7\n2 2\n255\n");
    CHECK_THROWS_AS(load_image(bad_magic), std::runtime_error);

    const std::string truncated = dir.file("t.pgm");
    testsup::write_text_file(truncated, std::string("P5\n2 2\n255\nab"));
    CHECK_THROWS_AS(load_image(truncated), std::runtime_error);

    const std::string bad_maxval = dir.file("mv.pgm");
    testsup::write_text_file(bad_maxval, "P2\n1 1\n70000\n5\n");
    CHECK_THROWS_AS(load_image(bad_maxval), std::runtime_error);

    const std::string oversized_sample = dir.file("os.pgm");
    testsup::write_text_file(oversized_sample, "P2\n1 1\n255\n300\n");
    CHECK_THROWS_AS(load_image(oversized_sample), std::runtime_error);

    const std::string negative_sample = dir.file("ns.pgm");
    testsup::write_text_file(negative_sample, "P2\n1 1\n255\n-3\n");
    CHECK_THROWS_AS(load_image(negative_sample), std::runtime_error);

    const std::string bad_width = dir.file("bw.pgm");
    testsup::write_text_file(bad_width, "P2\nabc 2\n255\n1 2 3 4\n");
    CHECK_THROWS_AS(load_image(bad_width), std::runtime_error);

    const std::string empty = dir.file("empty.pgm");
    testsup::write_text_file(empty, "");
    CHECK_THROWS_AS(load_image(empty), std::runtime_error);
}

TEST_CASE("ground truth parsing converts to zero-indexed coordinates") {
    testsup::TempDir dir("io_gt");
    const std::string path = dir.file("gt.txt");
    testsup::write_text_file(path,
                             "10,20,30,40\n"
                             "\n"
                             "1\t2\t3\t4\n"
                             "5.5 6.25 7 8\n");
    std::vector<BoundingBox> boxes = load_groundtruth(path);
    REQUIRE(boxes.size() == 3);
    CHECK(boxes[0].x == 9.0);
    CHECK(boxes[0].y == 19.0);
    CHECK(boxes[0].w == 30.0);
    CHECK(boxes[0].h == 40.0);
    CHECK(boxes[1].x == 0.0);
    CHECK(boxes[1].y == 1.0);
    CHECK(boxes[2].x == 4.5);
    CHECK(boxes[2].y == 5.25);
}

TEST_CASE("ground truth errors carry line numbers") {
    testsup::TempDir dir("io_gt_err");
    const std::string path = dir.file("gt.txt");
    testsup::write_text_file(path, "1,2,3,4\n5,6,7\n");
    CHECK_THROWS_WITH_AS(load_groundtruth(path), doctest::Contains("line 2"),
                         std::runtime_error);

    const std::string extra = dir.file("extra.txt");
    testsup::write_text_file(extra, "1,2,3,4,5\n");
    CHECK_THROWS_AS(load_groundtruth(extra), std::runtime_error);

    const std::string flat = dir.file("flat.txt");
    testsup::write_text_file(flat, "1,2,3,4\n1,2,0,4\n");
    CHECK_THROWS_WITH_AS(load_groundtruth(flat), doctest::Contains("line 2"),
                         std::runtime_error);

    const std::string blank = dir.file("blank.txt");
    testsup::write_text_file(blank, "\n\n");
    CHECK_THROWS_AS(load_groundtruth(blank), std::runtime_error);

    CHECK_THROWS_AS(load_groundtruth(dir.file("missing.txt")), std::runtime_error);
}

TEST_CASE("results CSV round trip and byte determinism") {
    testsup::TempDir dir("io_results");
    std::vector<BoundingBox> boxes = {
        {1.0, 2.0, 3.0, 4.0},
        {10.25, 20.5, 30.75, 40.0625},
    };
    const std::string path_a = dir.file("a.csv");
    const std::string path_b = dir.file("b.csv");
    write_results(path_a, boxes);
    write_results(path_b, boxes);
    CHECK(testsup::read_text_file(path_a) == testsup::read_text_file(path_b));

    const std::string text = testsup::read_text_file(path_a);
    CHECK(text.rfind("frame,x,y,w,h\n", 0) == 0);
    CHECK(text.find("1,1.0000,2.0000,3.0000,4.0000\n") != std::string::npos);
    CHECK(text.find("2,10.2500,20.5000,30.7500,40.0625\n") != std::string::npos);

    std::vector<BoundingBox> loaded = load_results(path_a);
    REQUIRE(loaded.size() == 2);
    for (std::size_t t = 0; t < 2; ++t) {
        CHECK(loaded[t].x == doctest::Approx(boxes[t].x).epsilon(1e-12));
        CHECK(loaded[t].y == doctest::Approx(boxes[t].y).epsilon(1e-12));
        CHECK(loaded[t].w == doctest::Approx(boxes[t].w).epsilon(1e-12));
        CHECK(loaded[t].h == doctest::Approx(boxes[t].h).epsilon(1e-12));
    }
}

TEST_CASE("load_results requires the header row") {
    testsup::TempDir dir("io_results_err");
    const std::string path = dir.file("r.csv");
    testsup::write_text_file(path, "1,1.0,2.0,3.0,4.0\n");
    CHECK_THROWS_AS(load_results(path), std::runtime_error);
    CHECK_THROWS_AS(load_results(dir.file("missing.csv")), std::runtime_error);
}

TEST_CASE("metrics JSON carries one key per metric field") {
    testsup::TempDir dir("io_metrics");
    std::vector<BoundingBox> gt(3, BoundingBox{0.0, 0.0, 10.0, 10.0});
    std::vector<BoundingBox> pred = {
        {0.0, 0.0, 10.0, 10.0},
        {5.0, 0.0, 10.0, 10.0},
        {25.0, 0.0, 10.0, 10.0},
    };
    TrackingMetrics metrics = nbekcf::summarize(pred, gt);
    const std::string path = dir.file("m.json");
    write_metrics(path, metrics);

    nlohmann::json j = nlohmann::json::parse(testsup::read_text_file(path));
    CHECK(j["mean_center_error"].get<double>() == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(j["distance_precision"].get<double>() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(j["mean_overlap"].get<double>() == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(j["overlap_precision"].get<double>() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(j["auc"].get<double>() == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK(j["precision_curve"].size() == 51);
    CHECK(j["success_curve"].size() == 21);

    // Byte determinism for identical metrics.
    const std::string again = dir.file("m2.json");
    write_metrics(again, metrics);
    CHECK(testsup::read_text_file(path) == testsup::read_text_file(again));
}

TEST_CASE("frame listing filters by extension and sorts by name") {
    testsup::TempDir dir("io_frames");
    GrayImage tiny(1, 1, {0.5});
    testsup::write_pgm(dir.file("0002.pgm"), tiny);
    testsup::write_pgm(dir.file("0001.pgm"), tiny);
    testsup::write_gray_ppm(dir.file("0003.PPM"), tiny);
    testsup::write_text_file(dir.file("notes.txt"), "not a frame\n");

    std::vector<std::string> frames = nbekcf::list_sequence_frames(dir.path().string());
    REQUIRE(frames.size() == 3);
    CHECK(frames[0].find("0001.pgm") != std::string::npos);
    CHECK(frames[1].find("0002.pgm") != std::string::npos);
    CHECK(frames[2].find("0003.PPM") != std::string::npos);

    CHECK_THROWS_AS(nbekcf::list_sequence_frames(dir.file("nope")), std::runtime_error);
}
