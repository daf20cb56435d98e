// Integration tests driving the installed CLI binary end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"
#include "sciq/nifti.hpp"
#include "sciq/volume.hpp"
#include "support/test_helpers.hpp"

using json = nlohmann::json;
using namespace sciq;
namespace fs = std::filesystem;

namespace {

const std::string kBin = SCIQUANT_BIN;
const std::string kDataDir = SCIQ_DATA_DIR;

fs::path work_dir() {
    const auto p = fs::temp_directory_path() / "sciq_test_cli";
    fs::create_directories(p);
    return p;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const auto out_path = work_dir() / "stdout.txt";
    const auto err_path = work_dir() / "stderr.txt";
    const std::string cmd =
        kBin + " " + args + " > " + out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

void write_spec(const fs::path& path, double tilt, int vg, int dg, double sp_ap = 0.8) {
    json spec;
    spec["dims"] = {64, 64, 64};
    spec["spacing"] = {0.92, sp_ap, 0.92};
    spec["cord_radius_mm"] = 4.0;
    spec["sagittal_tilt_deg"] = tilt;
    spec["lesion"] = {{"center", {32, 32, 32}}, {"half_extents", {2, 0, 5}}};
    spec["ventral_gap_voxels"] = vg;
    spec["dorsal_gap_voxels"] = dg;
    std::ofstream f(path);
    f << spec.dump(2);
}

BinaryMask tube_mask(Index3 dims, int x0, int x1, int y0, int y1, int z0, int z1) {
    auto v = Volume3D::axis_aligned(dims, {1, 1, 1}, "RPI", {0, 0, 0}, 0.0f, Dtype::uint8);
    for (int z = z0; z <= z1; ++z)
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                v.at(x, y, z) = 1.0f;
    return BinaryMask(std::move(v));
}

} // namespace

TEST_CASE("version and help always succeed") {
    CHECK(run("--version").exit_code == 0);
    CHECK(run("--help").exit_code == 0);
    for (const char* sub :
         {"analyze-bridges", "metrics", "preprocess", "phantom", "stats-compare"})
        CHECK(run(std::string(sub) + " --help").exit_code == 0);
}

TEST_CASE("bad arguments exit with the validation code") {
    CHECK(run("analyze-bridges").exit_code == 2);             // missing required
    CHECK(run("metrics --bogus-flag x").exit_code == 2);      // unknown flag
    CHECK(run("no-such-subcommand").exit_code == 2);
}

TEST_CASE("phantom spec errors are validation failures naming the violation") {
    const auto dir = work_dir();
    SUBCASE("gaps larger than the cord") {
        write_spec(dir / "bad.json", 0.0, 12, 12);
        const auto r = run("phantom --spec " + (dir / "bad.json").string() + " --out-dir " +
                           (dir / "bad_out").string());
        CHECK(r.exit_code == 2);
    }
    SUBCASE("missing key reports its path") {
        json spec;
        spec["dims"] = {64, 64, 64};
        std::ofstream((dir / "incomplete.json").string()) << spec.dump();
        const auto r = run("phantom --spec " + (dir / "incomplete.json").string() +
                           " --out-dir " + (dir / "x").string());
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("/spacing") != std::string::npos);
    }
}

TEST_CASE("phantom then analyze-bridges reproduces the designed widths") {
    const auto dir = work_dir();
    write_spec(dir / "flat.json", 0.0, 2, 0);
    const auto ph = run("phantom --spec " + (dir / "flat.json").string() + " --out-dir " +
                        (dir / "flat").string());
    REQUIRE(ph.exit_code == 0);

    const json truth = json::parse(slurp(dir / "flat" / "truth.json"));
    CHECK(truth["ventral_mm"].get<double>() == doctest::Approx(1.6));
    CHECK(truth["dorsal_mm"].get<double>() == 0.0);

    const auto an = run("analyze-bridges --sc " + (dir / "flat" / "sc.nii.gz").string() +
                        " --lesion " + (dir / "flat" / "lesion.nii.gz").string() + " --out " +
                        (dir / "flat_report.json").string());
    REQUIRE(an.exit_code == 0);
    const json report = json::parse(slurp(dir / "flat_report.json"));
    CHECK(report["midsagittal_index"] == truth["midsagittal_index"]);
    REQUIRE(report["slices"].size() == 1);
    CHECK(report["slices"][0]["ventral_mm"].get<double>() == doctest::Approx(1.6));
    CHECK(report["slices"][0]["dorsal_mm"].get<double>() == 0.0);
}

TEST_CASE("tilted phantom round-trips within tolerance through the CLI") {
    const auto dir = work_dir();
    write_spec(dir / "tilt30.json", 30.0, 3, 1);
    REQUIRE(run("phantom --spec " + (dir / "tilt30.json").string() + " --out-dir " +
                (dir / "tilt30").string())
                .exit_code == 0);
    const json truth = json::parse(slurp(dir / "tilt30" / "truth.json"));
    const auto an = run("analyze-bridges --sc " + (dir / "tilt30" / "sc.nii.gz").string() +
                        " --lesion " + (dir / "tilt30" / "lesion.nii.gz").string() + " --out " +
                        (dir / "tilt30_report.json").string());
    REQUIRE(an.exit_code == 0);
    const json report = json::parse(slurp(dir / "tilt30_report.json"));
    const double measured = report["slices"][0]["ventral_mm"].get<double>();
    const double expected = truth["ventral_mm_corrected"].get<double>();
    CHECK(std::abs(measured - expected) < 0.8 * std::cos(30.0 * 3.14159265 / 180.0) + 0.02 * expected);
}

TEST_CASE("analyze-bridges failure modes") {
    const auto dir = work_dir();
    write_spec(dir / "s.json", 0.0, 1, 1);
    REQUIRE(run("phantom --spec " + (dir / "s.json").string() + " --out-dir " +
                (dir / "s").string())
                .exit_code == 0);

    SUBCASE("missing lesion file exits 1 and names the path") {
        const auto r = run("analyze-bridges --sc " + (dir / "s" / "sc.nii.gz").string() +
                           " --lesion " + (dir / "missing_lesion.nii.gz").string());
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("missing_lesion.nii.gz") != std::string::npos);
    }
    SUBCASE("geometry mismatch exits 2 naming both geometries") {
        const auto other = tube_mask({16, 16, 16}, 4, 8, 4, 8, 2, 12);
        write_nifti(other.volume(), (dir / "other.nii.gz").string());
        const auto r = run("analyze-bridges --sc " + (dir / "s" / "sc.nii.gz").string() +
                           " --lesion " + (dir / "other.nii.gz").string());
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("dims (64,64,64)") != std::string::npos);
        CHECK(r.err.find("dims (16,16,16)") != std::string::npos);
    }
    SUBCASE("non-binary mask is a validation error") {
        testutil::Rng rng(71);
        auto noisy = testutil::random_volume(rng, {8, 8, 8});
        write_nifti(noisy, (dir / "noisy.nii.gz").string());
        const auto r = run("analyze-bridges --sc " + (dir / "noisy.nii.gz").string() +
                           " --lesion " + (dir / "noisy.nii.gz").string());
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("all-slices CSV has one data row per lesion slice") {
    const auto dir = work_dir();
    const auto sc = tube_mask({32, 16, 16}, 4, 28, 4, 12, 0, 15);
    const auto lesion = tube_mask({32, 16, 16}, 14, 16, 6, 8, 5, 9); // 3 sagittal slices
    write_nifti(sc.volume(), (dir / "csv_sc.nii.gz").string());
    write_nifti(lesion.volume(), (dir / "csv_les.nii.gz").string());
    const auto r = run("analyze-bridges --sc " + (dir / "csv_sc.nii.gz").string() +
                       " --lesion " + (dir / "csv_les.nii.gz").string() + " --all-slices" +
                       " --out " + (dir / "csv_report.json").string() + " --csv " +
                       (dir / "slices.csv").string());
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp(dir / "slices.csv");
    CHECK(csv.rfind("sagittal_index,ventral_mm,dorsal_mm,angle_deg\n", 0) == 0);
    int lines = 0;
    for (char c : csv)
        lines += c == '\n';
    CHECK(lines == 4); // header + 3 slices
}

TEST_CASE("metrics on identical masks scores 1 everywhere") {
    const auto dir = work_dir();
    const auto m = tube_mask({16, 16, 16}, 4, 8, 4, 8, 2, 12);
    write_nifti(m.volume(), (dir / "m.nii.gz").string());
    const auto r = run("metrics --pred " + (dir / "m.nii.gz").string() + " --gt " +
                       (dir / "m.nii.gz").string() + " --out " + (dir / "m.json").string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(slurp(dir / "m.json"));
    CHECK(j["dice"] == 1.0);
    CHECK(j["ppv_l"] == 1.0);
    CHECK(j["sens_l"] == 1.0);
    CHECK(j["f1_l"] == 1.0);
    CHECK(j["fp"] == 0);
}

TEST_CASE("metrics detects the constructed 2-TP/1-FP case") {
    const auto dir = work_dir();
    auto gt_vol = Volume3D::axis_aligned({16, 8, 8}, {1, 1, 1}, "RPI", {0, 0, 0}, 0.0f,
                                         Dtype::uint8);
    gt_vol.at(2, 2, 2) = 1.0f;
    gt_vol.at(10, 2, 2) = 1.0f;
    auto pred_vol = gt_vol;
    pred_vol.at(6, 6, 6) = 1.0f; // spurious component
    write_nifti(gt_vol, (dir / "gt2.nii.gz").string());
    write_nifti(pred_vol, (dir / "pred2.nii.gz").string());
    const auto r = run("metrics --pred " + (dir / "pred2.nii.gz").string() + " --gt " +
                       (dir / "gt2.nii.gz").string() + " --out " + (dir / "m2.json").string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(slurp(dir / "m2.json"));
    CHECK(j["tp"] == 2);
    CHECK(j["fp"] == 1);
    CHECK(j["fn"] == 0);
    CHECK(j["f1_l"].get<double>() == doctest::Approx(0.8));
}

TEST_CASE("metrics batch aggregates mean and sample sd") {
    const auto dir = work_dir();
    // three subjects with dice 1, 1, 0 by construction
    const auto a = tube_mask({8, 8, 8}, 2, 4, 2, 4, 2, 4);
    const auto b = tube_mask({8, 8, 8}, 5, 6, 5, 6, 5, 6);
    write_nifti(a.volume(), (dir / "a.nii.gz").string());
    write_nifti(b.volume(), (dir / "b.nii.gz").string());
    std::ofstream manifest(dir / "manifest.csv");
    manifest << "subject_id,pred_path,gt_path\n";
    manifest << "s1," << (dir / "a.nii.gz").string() << "," << (dir / "a.nii.gz").string()
             << "\n";
    manifest << "s2," << (dir / "b.nii.gz").string() << "," << (dir / "b.nii.gz").string()
             << "\n";
    manifest << "s3," << (dir / "a.nii.gz").string() << "," << (dir / "b.nii.gz").string()
             << "\n";
    manifest.close();
    const auto r = run("metrics --batch " + (dir / "manifest.csv").string() + " --out " +
                       (dir / "batch.json").string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(slurp(dir / "batch.json"));
    REQUIRE(j["subjects"].size() == 3);
    CHECK(j["aggregate"]["n"] == 3);
    CHECK(j["aggregate"]["dice_mean"].get<double>() == doctest::Approx(2.0 / 3.0));
    // sample sd of {1, 1, 0} is sqrt(1/3)
    CHECK(j["aggregate"]["dice_sd"].get<double>() == doctest::Approx(std::sqrt(1.0 / 3.0)));
    CHECK(j["aggregate"]["f1_l_mean"].get<double>() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("preprocess identity keeps data bit-exact") {
    const auto dir = work_dir();
    testutil::Rng rng(72);
    auto v = testutil::random_volume(rng, {10, 9, 8}, {0.92, 0.68, 0.92});
    write_nifti(v, (dir / "in.nii.gz").string());
    const auto r = run("preprocess --in " + (dir / "in.nii.gz").string() + " --out " +
                       (dir / "out.nii.gz").string() +
                       " --orientation RPI --spacing 0.92,0.68,0.92");
    REQUIRE(r.exit_code == 0);
    const auto back = read_nifti((dir / "out.nii.gz").string());
    REQUIRE(back.dims() == v.dims());
    CHECK(std::memcmp(back.data().data(), v.data().data(),
                      v.data().size() * sizeof(float)) == 0);
}

TEST_CASE("preprocess --zscore output is centered") {
    const auto dir = work_dir();
    testutil::Rng rng(73);
    auto v = testutil::random_volume(rng, {10, 9, 8});
    write_nifti(v, (dir / "zin.nii.gz").string());
    const auto r = run("preprocess --in " + (dir / "zin.nii.gz").string() + " --out " +
                       (dir / "zout.nii.gz").string() + " --spacing 1,1,1 --zscore");
    REQUIRE(r.exit_code == 0);
    const auto z = read_nifti((dir / "zout.nii.gz").string());
    double sum = 0.0;
    for (float x : z.data())
        sum += x;
    CHECK(std::abs(sum / static_cast<double>(z.voxel_count())) < 1e-6);
}

TEST_CASE("preprocess --zscore on a constant volume is a validation failure") {
    const auto dir = work_dir();
    auto v = Volume3D::axis_aligned({6, 6, 6}, {1, 1, 1}, "RPI", {0, 0, 0}, 5.0f);
    write_nifti(v, (dir / "const.nii.gz").string());
    const auto r = run("preprocess --in " + (dir / "const.nii.gz").string() + " --out " +
                       (dir / "constz.nii.gz").string() + " --spacing 1,1,1 --zscore");
    CHECK(r.exit_code == 2);
}

TEST_CASE("preprocess --mask keeps masks binary under resampling") {
    const auto dir = work_dir();
    testutil::Rng rng(74);
    const auto m = testutil::random_mask(rng, {12, 12, 12}, 0.4, {0.92, 0.68, 0.92});
    write_nifti(m.volume(), (dir / "min.nii.gz").string());
    const auto r = run("preprocess --in " + (dir / "min.nii.gz").string() + " --out " +
                       (dir / "mout.nii.gz").string() + " --spacing 0.5,0.5,0.5 --mask");
    REQUIRE(r.exit_code == 0);
    const auto back = read_nifti((dir / "mout.nii.gz").string());
    for (float x : back.data())
        CHECK((x == 0.0f || x == 1.0f));
}

TEST_CASE("stats-compare on the packaged comparison table") {
    const auto dir = work_dir();
    const std::string fixture = kDataDir + "/bridges_method_comparison.csv";

    SUBCASE("ventral columns: no significant difference") {
        const auto r = run("stats-compare --csv " + fixture +
                           " --columns manual_ventral,semiauto_ventral,auto_ventral --out " +
                           (dir / "v.json").string());
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(slurp(dir / "v.json"));
        CHECK(j["kruskal_wallis"]["p_value"].get<double>() > 0.05);
        CHECK(j["kruskal_wallis"]["significant_at_0.05"] == false);
        CHECK(j["kruskal_wallis"]["df"] == 2.0);
        // n = 15 < 20: normality reported as skipped, KW still runs
        for (const auto& t : j["normality"]) {
            CHECK(t["skipped"] == true);
            CHECK(t["reason"] == "n < 20");
        }
        CHECK(j["n_per_column"] == json::array({15, 15, 15}));
    }
    SUBCASE("dorsal columns: no significant difference") {
        const auto r = run("stats-compare --csv " + fixture +
                           " --columns manual_dorsal,semiauto_dorsal,auto_dorsal --out " +
                           (dir / "d.json").string());
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(slurp(dir / "d.json"));
        CHECK(j["kruskal_wallis"]["p_value"].get<double>() > 0.05);
        CHECK(j["kruskal_wallis"]["significant_at_0.05"] == false);
    }
    SUBCASE("missing column names the column") {
        const auto r = run("stats-compare --csv " + fixture + " --columns manual_ventral,nope");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("nope") != std::string::npos);
    }
}

TEST_CASE("stats-compare rejects non-numeric cells with row/column context") {
    const auto dir = work_dir();
    std::ofstream f(dir / "badcells.csv");
    f << "a,b\n1.0,2.0\nx,3.0\n";
    f.close();
    const auto r = run("stats-compare --csv " + (dir / "badcells.csv").string() +
                       " --columns a,b");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("row 3") != std::string::npos);
    CHECK(r.err.find("'a'") != std::string::npos);
}

TEST_CASE("stats-compare on identical columns gives H = 0, p = 1") {
    const auto dir = work_dir();
    std::ofstream f(dir / "same.csv");
    f << "a,b,c\n";
    for (int i = 0; i < 5; ++i)
        f << i << "," << i << "," << i << "\n";
    f.close();
    const auto r = run("stats-compare --csv " + (dir / "same.csv").string() +
                       " --columns a,b,c --out " + (dir / "same.json").string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(slurp(dir / "same.json"));
    CHECK(j["kruskal_wallis"]["statistic"].get<double>() == doctest::Approx(0.0));
    CHECK(j["kruskal_wallis"]["p_value"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("preprocess --binarize thresholds soft volumes into valid masks") {
    const auto dir = work_dir();
    auto v = Volume3D::axis_aligned({6, 6, 6}, {1, 1, 1}, "RPI");
    for (std::size_t i = 0; i < v.data().size(); ++i)
        v.data()[i] = static_cast<float>(i % 10) / 10.0f; // soft values in [0, 0.9]
    write_nifti(v, (dir / "soft.nii.gz").string());
    const auto r = run("preprocess --in " + (dir / "soft.nii.gz").string() + " --out " +
                       (dir / "hard.nii.gz").string() + " --spacing 1,1,1 --mask --binarize 0.5");
    REQUIRE(r.exit_code == 0);
    const auto hard = read_nifti((dir / "hard.nii.gz").string());
    std::size_t ones = 0;
    for (float x : hard.data()) {
        CHECK((x == 0.0f || x == 1.0f));
        ones += x == 1.0f;
    }
    CHECK(ones > 0);
    CHECK(hard.dtype() == Dtype::uint8);
}

TEST_CASE("SCIQUANT_SPACING overrides the default target spacing") {
    const auto dir = work_dir();
    testutil::Rng rng(75);
    auto v = testutil::random_volume(rng, {10, 10, 10}, {2.0, 2.0, 2.0});
    write_nifti(v, (dir / "env_in.nii.gz").string());
    const auto out_path = dir / "env_out.nii.gz";
    const std::string cmd = "SCIQUANT_SPACING=1,1,1 " + kBin + " preprocess --in " +
                            (dir / "env_in.nii.gz").string() + " --out " + out_path.string() +
                            " > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const auto out = read_nifti(out_path.string());
    CHECK(out.dims() == Index3{20, 20, 20});
    CHECK(out.spacing()[0] == doctest::Approx(1.0));
}

TEST_CASE("reports are byte-identical across runs") {
    const auto dir = work_dir();
    const std::string fixture = kDataDir + "/bridges_method_comparison.csv";
    const std::string cmd = "stats-compare --csv " + fixture +
                            " --columns manual_ventral,semiauto_ventral,auto_ventral --out ";
    REQUIRE(run(cmd + (dir / "r1.json").string()).exit_code == 0);
    REQUIRE(run(cmd + (dir / "r2.json").string()).exit_code == 0);
    CHECK(slurp(dir / "r1.json") == slurp(dir / "r2.json"));
}
