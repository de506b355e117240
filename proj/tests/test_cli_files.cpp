#include <doctest.h>

#include <cstdlib>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "nbekcf/core.hpp"
#include "nbekcf/io.hpp"
#include "test_support.hpp"

// End-to-end checks against the installed command-line binary; the path is
// injected at compile time so the tests always exercise the freshly built
// executable.

namespace {

int run_cli(const std::string& args, const std::string& capture_path) {
    const std::string command =
        std::string(NBEKCF_CLI_PATH) + " " + args + " > " + capture_path + " 2>&1";
    const int status = std::system(command.c_str());
    if (status == -1 || !WIFEXITED(status)) {
        return -1;
    }
    return WEXITSTATUS(status);
}

// Frames on disk plus a 1-indexed ground-truth file, as the CLI consumes them.
struct DiskSequence {
    testsup::TempDir dir;
    std::string frames_dir;
    std::string gt_path;
    testsup::SyntheticSequence seq;

    explicit DiskSequence(int frame_count) : dir("cli_seq"), seq(testsup::make_synthetic_sequence(frame_count)) {
        frames_dir = dir.file("frames");
        std::filesystem::create_directory(frames_dir);
        for (int f = 0; f < frame_count; ++f) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%03d.pgm", f);
            testsup::write_pgm(frames_dir + "/" + name, seq.frames[f]);
        }
        gt_path = dir.file("groundtruth.txt");
        std::string gt_text;
        for (const nbekcf::BoundingBox& b : seq.groundtruth) {
            char line[128];
            std::snprintf(line, sizeof(line), "%.0f,%.0f,%.0f,%.0f\n", b.x + 1.0, b.y + 1.0, b.w,
                          b.h);
            gt_text += line;
        }
        testsup::write_text_file(gt_path, gt_text);
    }

    std::string init_arg() const {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.0f,%.0f,%.0f,%.0f", seq.groundtruth[0].x,
                      seq.groundtruth[0].y, seq.groundtruth[0].w, seq.groundtruth[0].h);
        return buf;
    }
};

}  // namespace

TEST_CASE("track subcommand writes results, metrics and a summary line") {
    DiskSequence disk(6);
    const std::string out = disk.dir.file("results.csv");
    const std::string metrics = disk.dir.file("metrics.json");
    const std::string log = disk.dir.file("track.log");

    const int code = run_cli("track --seq " + disk.frames_dir + " --init " + disk.init_arg() +
                                 " --gt " + disk.gt_path + " --out " + out + " --metrics " +
                                 metrics,
                             log);
    REQUIRE(code == 0);

    std::vector<nbekcf::BoundingBox> boxes = nbekcf::load_results(out);
    REQUIRE(boxes.size() == 6);
    // Row 1 echoes the initial box.
    CHECK(boxes[0].x == doctest::Approx(disk.seq.groundtruth[0].x).epsilon(1e-9));
    CHECK(boxes[0].w == doctest::Approx(40.0).epsilon(1e-9));

    nlohmann::json j = nlohmann::json::parse(testsup::read_text_file(metrics));
    CHECK(j.contains("mean_center_error"));
    CHECK(j.contains("auc"));
    CHECK(j["mean_center_error"].get<double>() <= 3.0);
    CHECK(j["overlap_precision"].get<double>() == 1.0);

    const std::string text = testsup::read_text_file(log);
    CHECK(text.find("mean center error:") != std::string::npos);
    CHECK(text.find("mean fps:") != std::string::npos);
}

TEST_CASE("track output bytes are identical across reruns") {
    DiskSequence disk(4);
    const std::string out_a = disk.dir.file("a.csv");
    const std::string out_b = disk.dir.file("b.csv");
    const std::string met_a = disk.dir.file("a.json");
    const std::string met_b = disk.dir.file("b.json");
    const std::string base = "track --seq " + disk.frames_dir + " --init " + disk.init_arg() +
                             " --gt " + disk.gt_path;
    REQUIRE(run_cli(base + " --out " + out_a + " --metrics " + met_a,
                    disk.dir.file("a.log")) == 0);
    REQUIRE(run_cli(base + " --out " + out_b + " --metrics " + met_b,
                    disk.dir.file("b.log")) == 0);
    CHECK(testsup::read_text_file(out_a) == testsup::read_text_file(out_b));
    CHECK(testsup::read_text_file(met_a) == testsup::read_text_file(met_b));
}

TEST_CASE("malformed initial boxes exit with the usage code") {
    DiskSequence disk(1);
    CHECK(run_cli("track --seq " + disk.frames_dir + " --init 1,2,3",
                  disk.dir.file("short.log")) == 2);
    CHECK(run_cli("track --seq " + disk.frames_dir + " --init 1,2,0,4",
                  disk.dir.file("flat.log")) == 2);
    CHECK(run_cli("track --seq " + disk.frames_dir + " --init not,a,box,at,all",
                  disk.dir.file("text.log")) == 2);
}

TEST_CASE("missing required options and bad values exit with the usage code") {
    DiskSequence disk(1);
    CHECK(run_cli("track --init 1,2,3,4", disk.dir.file("noseq.log")) == 2);
    CHECK(run_cli("track --seq " + disk.dir.file("absent") + " --init 1,2,3,4",
                  disk.dir.file("nodir.log")) == 2);
    CHECK(run_cli("track --seq " + disk.frames_dir + " --init 1,2,3,4 --kernel cubic",
                  disk.dir.file("kernel.log")) == 2);
    CHECK(run_cli("nonsense", disk.dir.file("cmd.log")) == 2);
}

TEST_CASE("mismatched ground truth exits with a runtime error") {
    DiskSequence disk(3);
    testsup::write_text_file(disk.gt_path, "41,101,40,40\n41,101,40,40\n");
    const std::string log = disk.dir.file("mismatch.log");
    CHECK(run_cli("track --seq " + disk.frames_dir + " --init " + disk.init_arg() + " --gt " +
                      disk.gt_path + " --out " + disk.dir.file("r.csv"),
                  log) == 1);
    CHECK(testsup::read_text_file(log).find("error:") != std::string::npos);
}

TEST_CASE("selftest subcommand passes and reports every suite") {
    testsup::TempDir dir("cli_selftest");
    const std::string log = dir.file("selftest.log");
    REQUIRE(run_cli("selftest --cases 6 --seed 7", log) == 0);
    const std::string text = testsup::read_text_file(log);
    CHECK(text.find("acsii") != std::string::npos);
    CHECK(text.find("ccim") != std::string::npos);
    CHECK(text.find("kernel") != std::string::npos);
    CHECK(text.find("regression") != std::string::npos);
    CHECK(text.find("0 failures") != std::string::npos);
}

TEST_CASE("bench subcommand reports timings with a brute-force speedup") {
    testsup::TempDir dir("cli_bench");
    const std::string log = dir.file("bench.log");
    REQUIRE(run_cli("bench --m 2 --n 2 --M 8 --N 8 --D 2 --iters 3", log) == 0);
    const std::string text = testsup::read_text_file(log);
    CHECK(text.find("median_ms") != std::string::npos);
    CHECK(text.find("ccim") != std::string::npos);
    CHECK(text.find("acsii") != std::string::npos);
    CHECK(text.find("brute") != std::string::npos);

    const std::string skip_log = dir.file("skip.log");
    REQUIRE(run_cli("bench --m 2 --n 2 --M 20 --N 20 --D 2 --iters 1", skip_log) == 0);
    CHECK(testsup::read_text_file(skip_log).find("brute skipped") != std::string::npos);

    CHECK(run_cli("bench --m 5 --n 2 --M 4 --N 4", dir.file("badm.log")) == 2);
    CHECK(run_cli("bench --method brute --M 20 --N 20", dir.file("badbrute.log")) == 2);
}

TEST_CASE("help exits cleanly") {
    testsup::TempDir dir("cli_help");
    CHECK(run_cli("--help", dir.file("help.log")) == 0);
    CHECK(run_cli("track --help", dir.file("track_help.log")) == 0);
}
