// sciquant - command-line front end: bridge analysis, segmentation metrics,
// preprocessing, phantom generation, and method-comparison statistics.
//
// Exit codes: 0 success, 1 I/O error, 2 validation error. All reports are
// JSON with fields in fixed order and reals rounded to 6 significant digits
// so identical inputs produce byte-identical output.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sciq/bridges.hpp"
#include "sciq/metrics.hpp"
#include "sciq/nifti.hpp"
#include "sciq/phantom.hpp"
#include "sciq/preprocess.hpp"
#include "sciq/stats.hpp"
#include "sciq/volume.hpp"

#ifdef _WIN32
#include <process.h>
#else
#include <unistd.h>
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace sciq;

namespace {

constexpr const char* kVersion = "sciquant 1.0.0";
constexpr int kFormatVersion = 1;
constexpr const char* kSpacingEnvVar = "SCIQUANT_SPACING";
constexpr Triple kDefaultSpacing{0.92, 0.68, 0.92};

// ---------------------------------------------------------------- helpers

double round6(double v) {
    if (v == 0.0 || !std::isfinite(v))
        return v;
    const double exponent = std::floor(std::log10(std::abs(v)));
    const double mag = std::pow(10.0, 5.0 - exponent);
    return std::round(v * mag) / mag;
}

void put(json& j, const char* key, const std::optional<double>& v) {
    if (v)
        j[key] = round6(*v);
    else
        j[key] = nullptr;
}

void put(json& j, const char* key, const std::optional<int>& v) {
    if (v)
        j[key] = *v;
    else
        j[key] = nullptr;
}

json triple_to_json(const Triple& t) {
    return json::array({round6(t[0]), round6(t[1]), round6(t[2])});
}

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp" + std::to_string(static_cast<long>(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f)
            throw IOError("cannot open '" + path + "' for writing");
        f << content;
        f.close();
        if (!f.good()) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IOError("failed writing '" + path + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IOError("failed to move temp file into place for '" + path + "'");
    }
}

// Reports go to --out when given, stdout otherwise.
void emit_report(const json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        atomic_write_text(out_path, text);
}

Triple parse_spacing(const std::string& text) {
    Triple out{};
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 3)
            throw ValidationError("spacing must have exactly 3 components, got '" + text + "'");
        try {
            std::size_t pos = 0;
            out[static_cast<std::size_t>(i)] = std::stod(item, &pos);
            if (pos != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("invalid spacing component '" + item + "'");
        }
        ++i;
    }
    if (i != 3)
        throw ValidationError("spacing must have exactly 3 components, got '" + text + "'");
    return out;
}

Triple default_spacing() {
    if (const char* env = std::getenv(kSpacingEnvVar))
        return parse_spacing(env);
    return kDefaultSpacing;
}

BinaryMask read_mask_rpi(const std::string& path) {
    const Volume3D vol = reorient(read_nifti(path), "RPI");
    try {
        return BinaryMask(vol);
    } catch (const ValidationError& e) {
        throw ValidationError("'" + path + "': " + e.what() +
                              " (threshold it first: sciquant preprocess --mask --binarize 0.5)");
    }
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return static_cast<int>(i);
        return -1;
    }
};

Csv read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IOError("cannot open '" + path + "' for reading");
    Csv csv;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (line.back() == ',')
            cells.push_back("");
        if (first) {
            csv.header = std::move(cells);
            first = false;
        } else {
            csv.rows.push_back(std::move(cells));
        }
    }
    if (first)
        throw FormatError("'" + path + "' is empty; expected a CSV header");
    return csv;
}

double parse_numeric_cell(const Csv& csv, std::size_t row, int col, const std::string& colname) {
    if (col >= static_cast<int>(csv.rows[row].size()))
        throw ValidationError("row " + std::to_string(row + 2) + " has no column '" + colname +
                              "'");
    const std::string& cell = csv.rows[row][static_cast<std::size_t>(col)];
    try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (pos != cell.size())
            throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("non-numeric cell '" + cell + "' at row " + std::to_string(row + 2) +
                              ", column '" + colname + "'");
    }
}

// ------------------------------------------------------- analyze-bridges

struct AnalyzeArgs {
    std::string sc_path, lesion_path, out_path, csv_path;
    bool all_slices = false;
    bool no_angle_correct = false;
    int smooth_window = 5;
};

int cmd_analyze_bridges(const AnalyzeArgs& args) {
    const BinaryMask sc = read_mask_rpi(args.sc_path);
    const BinaryMask lesion = read_mask_rpi(args.lesion_path);

    BridgeOptions opts;
    opts.all_slices = args.all_slices;
    opts.angle_correct = !args.no_angle_correct;
    opts.smooth_window = args.smooth_window;
    const BridgeReport report = analyze_bridges(sc, lesion, opts);

    json j;
    j["format_version"] = kFormatVersion;
    j["command"] = "analyze-bridges";
    j["sc"] = args.sc_path;
    j["lesion"] = args.lesion_path;
    j["angle_corrected"] = report.angle_corrected;
    j["smoothing_window"] = opts.smooth_window;
    j["lesion_absent"] = report.lesion_absent;
    j["lesion_outside_cord_warning"] = report.lesion_outside_cord;
    j["midsagittal_index"] = report.midsagittal_index;
    j["spacing_mm"] = triple_to_json(report.spacing);
    j["slices"] = json::array();
    for (const auto& m : report.per_slice) {
        json s;
        s["sagittal_index"] = m.sagittal_index;
        put(s, "ventral_mm", m.ventral_width_mm);
        put(s, "dorsal_mm", m.dorsal_width_mm);
        put(s, "min_row_ventral", m.min_row_ventral);
        put(s, "min_row_dorsal", m.min_row_dorsal);
        put(s, "mean_angle_deg", m.mean_angle_deg);
        j["slices"].push_back(std::move(s));
    }
    emit_report(j, args.out_path);

    if (!args.csv_path.empty()) {
        std::ostringstream csv;
        csv << "sagittal_index,ventral_mm,dorsal_mm,angle_deg\n";
        char buf[64];
        auto cell = [&](const std::optional<double>& v) {
            if (!v)
                return std::string();
            std::snprintf(buf, sizeof(buf), "%.6g", round6(*v));
            return std::string(buf);
        };
        for (const auto& m : report.per_slice)
            csv << m.sagittal_index << ',' << cell(m.ventral_width_mm) << ','
                << cell(m.dorsal_width_mm) << ',' << cell(m.mean_angle_deg) << '\n';
        atomic_write_text(args.csv_path, csv.str());
    }
    return 0;
}

// ---------------------------------------------------------------- metrics

struct MetricsArgs {
    std::string pred_path, gt_path, batch_path, out_path;
    int connectivity = 26;
    std::int64_t min_overlap = 1;
};

json subject_metrics(const std::string& pred_path, const std::string& gt_path,
                     const MetricsArgs& args) {
    const BinaryMask pred = read_mask_rpi(pred_path);
    const BinaryMask gt = read_mask_rpi(gt_path);
    const double d = dice(pred, gt);
    const LesionWiseMetrics m =
        lesion_wise_counts(pred, gt, args.connectivity, args.min_overlap);
    json j;
    j["dice"] = round6(d);
    j["tp"] = m.tp;
    j["fp"] = m.fp;
    j["fn"] = m.fn;
    j["ppv_l"] = round6(m.ppv_l);
    j["sens_l"] = round6(m.sens_l);
    j["f1_l"] = round6(m.f1_l);
    return j;
}

int cmd_metrics(const MetricsArgs& args) {
    json j;
    j["format_version"] = kFormatVersion;
    if (args.batch_path.empty()) {
        j["command"] = "metrics";
        j["connectivity"] = args.connectivity;
        j["min_overlap_voxels"] = args.min_overlap;
        json s = subject_metrics(args.pred_path, args.gt_path, args);
        j.update(s);
        emit_report(j, args.out_path);
        return 0;
    }

    // batch manifest: subject_id, pred_path, gt_path
    const Csv csv = read_csv(args.batch_path);
    const int id_col = csv.column("subject_id");
    const int pred_col = csv.column("pred_path");
    const int gt_col = csv.column("gt_path");
    if (id_col < 0 || pred_col < 0 || gt_col < 0)
        throw ValidationError("manifest '" + args.batch_path +
                              "' must have columns subject_id, pred_path, gt_path");
    if (csv.rows.empty())
        throw ValidationError("manifest '" + args.batch_path + "' has no subjects");

    j["command"] = "metrics-batch";
    j["connectivity"] = args.connectivity;
    j["min_overlap_voxels"] = args.min_overlap;
    j["subjects"] = json::array();

    const char* keys[] = {"dice", "ppv_l", "sens_l", "f1_l"};
    std::vector<std::vector<double>> samples(4);
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        const auto need = static_cast<std::size_t>(std::max({id_col, pred_col, gt_col}));
        if (row.size() <= need)
            throw ValidationError("manifest row " + std::to_string(r + 2) + " is incomplete");
        json s;
        s["subject_id"] = row[static_cast<std::size_t>(id_col)];
        json m = subject_metrics(row[static_cast<std::size_t>(pred_col)],
                                 row[static_cast<std::size_t>(gt_col)], args);
        s.update(m);
        for (std::size_t k = 0; k < 4; ++k)
            samples[k].push_back(m[keys[k]].get<double>());
        j["subjects"].push_back(std::move(s));
    }

    // mean +/- sd presentation (sample sd, n-1)
    json agg;
    agg["n"] = csv.rows.size();
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& v = samples[k];
        double mean = 0.0;
        for (double x : v)
            mean += x;
        mean /= static_cast<double>(v.size());
        double sd = 0.0;
        if (v.size() > 1) {
            for (double x : v)
                sd += (x - mean) * (x - mean);
            sd = std::sqrt(sd / static_cast<double>(v.size() - 1));
        }
        agg[std::string(keys[k]) + "_mean"] = round6(mean);
        agg[std::string(keys[k]) + "_sd"] = round6(sd);
    }
    j["aggregate"] = std::move(agg);
    emit_report(j, args.out_path);
    return 0;
}

// ------------------------------------------------------------- preprocess

struct PreprocessArgs {
    std::string in_path, out_path;
    std::string orientation = "RPI";
    std::string spacing_text; // empty -> default / env var
    bool zscore = false;
    bool mask = false;
    double binarize_threshold = 0.0;
    bool do_binarize = false;
};

int cmd_preprocess(const PreprocessArgs& args) {
    const Triple spacing =
        args.spacing_text.empty() ? default_spacing() : parse_spacing(args.spacing_text);

    Volume3D vol = read_nifti(args.in_path);
    vol = reorient(vol, args.orientation);
    vol = resample(vol, spacing,
                   args.mask ? Interpolation::nearest : Interpolation::linear);
    if (args.zscore && !args.mask)
        vol = zscore_normalize(vol);
    if (args.do_binarize)
        vol = binarize(vol, args.binarize_threshold).volume();
    write_nifti(vol, args.out_path);

    json j;
    j["format_version"] = kFormatVersion;
    j["command"] = "preprocess";
    j["input"] = args.in_path;
    j["output"] = args.out_path;
    j["orientation"] = args.orientation;
    j["spacing_mm"] = triple_to_json(spacing);
    j["mode"] = args.mask ? "mask" : "image";
    j["zscore"] = args.zscore && !args.mask;
    if (args.do_binarize)
        j["binarize_threshold"] = round6(args.binarize_threshold);
    else
        j["binarize_threshold"] = nullptr;
    j["dims"] = json::array({vol.dims()[0], vol.dims()[1], vol.dims()[2]});
    emit_report(j, "");
    return 0;
}

// ---------------------------------------------------------------- phantom

// Typed getters that name the offending JSON path on failure.
const json& spec_key(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key))
        throw ValidationError("phantom spec: missing required key " + path + "/" + key);
    return j.at(key);
}

Index3 spec_index3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number_integer())
        throw ValidationError("phantom spec: " + path + " must be an array of 3 integers");
    return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

Triple spec_triple(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number())
        throw ValidationError("phantom spec: " + path + " must be an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double spec_number(const json& j, const std::string& path) {
    if (!j.is_number())
        throw ValidationError("phantom spec: " + path + " must be a number");
    return j.get<double>();
}

int spec_int(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        throw ValidationError("phantom spec: " + path + " must be an integer");
    return j.get<int>();
}

PhantomSpec parse_phantom_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IOError("cannot open '" + path + "' for reading");
    json j;
    try {
        f >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("phantom spec '" + path + "' is not valid JSON: " + e.what());
    }
    PhantomSpec spec;
    spec.dims = spec_index3(spec_key(j, "", "dims"), "/dims");
    spec.spacing = spec_triple(spec_key(j, "", "spacing"), "/spacing");
    spec.cord_radius_mm = spec_number(spec_key(j, "", "cord_radius_mm"), "/cord_radius_mm");
    spec.sagittal_tilt_deg =
        spec_number(spec_key(j, "", "sagittal_tilt_deg"), "/sagittal_tilt_deg");
    const json& lesion = spec_key(j, "", "lesion");
    spec.lesion.center = spec_index3(spec_key(lesion, "/lesion", "center"), "/lesion/center");
    spec.lesion.half_extents =
        spec_index3(spec_key(lesion, "/lesion", "half_extents"), "/lesion/half_extents");
    spec.ventral_gap_voxels =
        spec_int(spec_key(j, "", "ventral_gap_voxels"), "/ventral_gap_voxels");
    spec.dorsal_gap_voxels = spec_int(spec_key(j, "", "dorsal_gap_voxels"), "/dorsal_gap_voxels");
    return spec;
}

struct PhantomArgs {
    std::string spec_path, out_dir;
};

int cmd_phantom(const PhantomArgs& args) {
    const PhantomSpec spec = parse_phantom_spec(args.spec_path);
    const Phantom ph = generate_phantom(spec);

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    const fs::path dir(args.out_dir);
    write_nifti(ph.cord.volume(), (dir / "sc.nii.gz").string());
    write_nifti(ph.lesion.volume(), (dir / "lesion.nii.gz").string());

    json t;
    t["format_version"] = kFormatVersion;
    t["command"] = "phantom";
    t["midsagittal_index"] = ph.truth.midsagittal_index;
    t["tilt_deg"] = round6(ph.truth.tilt_deg);
    t["ventral_mm"] = round6(ph.truth.ventral_mm);
    t["dorsal_mm"] = round6(ph.truth.dorsal_mm);
    t["ventral_mm_corrected"] = round6(ph.truth.ventral_mm_corrected);
    t["dorsal_mm_corrected"] = round6(ph.truth.dorsal_mm_corrected);
    atomic_write_text((dir / "truth.json").string(), t.dump(2) + "\n");
    std::cout << t.dump(2) << "\n";
    return 0;
}

// ----------------------------------------------------------- stats-compare

struct StatsArgs {
    std::string csv_path, columns_text, out_path;
};

int cmd_stats_compare(const StatsArgs& args) {
    const Csv csv = read_csv(args.csv_path);

    std::vector<std::string> columns;
    {
        std::stringstream ss(args.columns_text);
        std::string c;
        while (std::getline(ss, c, ','))
            if (!c.empty())
                columns.push_back(c);
    }
    if (columns.size() < 2)
        throw ValidationError("--columns needs at least 2 comma-separated column names");

    std::vector<std::vector<double>> groups;
    for (const auto& name : columns) {
        const int col = csv.column(name);
        if (col < 0)
            throw ValidationError("column '" + name + "' not found in '" + args.csv_path + "'");
        std::vector<double> values;
        for (std::size_t r = 0; r < csv.rows.size(); ++r)
            values.push_back(parse_numeric_cell(csv, r, col, name));
        groups.push_back(std::move(values));
    }

    json j;
    j["format_version"] = kFormatVersion;
    j["command"] = "stats-compare";
    j["csv"] = args.csv_path;
    j["columns"] = columns;
    json n_per = json::array();
    for (const auto& g : groups)
        n_per.push_back(g.size());
    j["n_per_column"] = std::move(n_per);

    j["normality"] = json::array();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        json t;
        t["column"] = columns[i];
        t["n"] = groups[i].size();
        t["method"] = "dagostino-pearson";
        if (groups[i].size() < 20) {
            t["skipped"] = true;
            t["reason"] = "n < 20";
        } else {
            const TestResult r = dagostino_pearson(groups[i]);
            t["skipped"] = false;
            t["statistic"] = round6(r.statistic);
            t["p_value"] = round6(r.p_value);
            t["significant_at_0.05"] = r.p_value < 0.05;
        }
        j["normality"].push_back(std::move(t));
    }

    const TestResult kw = kruskal_wallis(groups);
    json k;
    k["method"] = kw.method;
    k["tie_correction"] = "midrank";
    k["statistic"] = round6(kw.statistic);
    k["df"] = kw.df;
    k["p_value"] = round6(kw.p_value);
    k["significant_at_0.05"] = kw.p_value < 0.05;
    j["kruskal_wallis"] = std::move(k);

    emit_report(j, args.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spinal cord injury biomarker quantification from segmentation masks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    auto* cmd_analyze = app.add_subcommand(
        "analyze-bridges", "Measure ventral/dorsal tissue bridges from cord + lesion masks");
    cmd_analyze->add_option("--sc", analyze.sc_path, "Spinal cord mask (NIfTI)")->required();
    cmd_analyze->add_option("--lesion", analyze.lesion_path, "Lesion mask (NIfTI)")->required();
    cmd_analyze->add_option("--out", analyze.out_path, "JSON report path (default: stdout)");
    cmd_analyze->add_option("--csv", analyze.csv_path, "Also write a per-slice CSV");
    cmd_analyze->add_flag("--all-slices", analyze.all_slices,
                          "Measure every sagittal slice containing lesion, not just midsagittal");
    cmd_analyze->add_flag("--no-angle-correct", analyze.no_angle_correct,
                          "Report raw in-plane widths without cos(tilt) correction");
    cmd_analyze->add_option("--smooth-window", analyze.smooth_window,
                            "Centerline smoothing window in levels (odd)")
        ->capture_default_str();

    MetricsArgs metrics;
    auto* cmd_m = app.add_subcommand("metrics",
                                     "Dice and lesion-wise detection metrics (PPV_L, Sens_L, F1_L)");
    cmd_m->add_option("--pred", metrics.pred_path, "Predicted mask (NIfTI)");
    cmd_m->add_option("--gt", metrics.gt_path, "Ground-truth mask (NIfTI)");
    cmd_m->add_option("--batch", metrics.batch_path,
                      "Manifest CSV with columns subject_id, pred_path, gt_path");
    cmd_m->add_option("--out", metrics.out_path, "JSON report path (default: stdout)");
    cmd_m->add_option("--connectivity", metrics.connectivity,
                      "Component connectivity: 6, 18 or 26")
        ->capture_default_str();
    cmd_m->add_option("--min-overlap", metrics.min_overlap,
                      "Voxel overlap required to count a detection")
        ->capture_default_str();

    PreprocessArgs prep;
    auto* cmd_p = app.add_subcommand(
        "preprocess", "Reorient, resample to a common resolution, and normalize intensities");
    cmd_p->add_option("--in", prep.in_path, "Input volume (NIfTI)")->required();
    cmd_p->add_option("--out", prep.out_path, "Output volume (NIfTI)")->required();
    cmd_p->add_option("--orientation", prep.orientation, "Target orientation code")
        ->capture_default_str();
    cmd_p->add_option("--spacing", prep.spacing_text,
                      "Target spacing mm, e.g. 0.92,0.68,0.92 (default from " +
                          std::string(kSpacingEnvVar) + " or 0.92,0.68,0.92)");
    cmd_p->add_flag("--zscore", prep.zscore, "Z-score intensity normalization");
    cmd_p->add_flag("--mask", prep.mask,
                    "Treat input as a mask: nearest-neighbor resampling, no z-score");
    auto* binarize_opt =
        cmd_p->add_option("--binarize", prep.binarize_threshold,
                          "Threshold to binarize the output (value > threshold -> 1)");

    PhantomArgs phantom;
    auto* cmd_ph = app.add_subcommand(
        "phantom", "Generate a synthetic cord/lesion pair with known bridge widths");
    cmd_ph->add_option("--spec", phantom.spec_path, "Phantom spec JSON")->required();
    cmd_ph->add_option("--out-dir", phantom.out_dir,
                       "Output directory for sc.nii.gz, lesion.nii.gz, truth.json")
        ->required();

    StatsArgs stats;
    auto* cmd_s = app.add_subcommand(
        "stats-compare", "Normality tests per column plus Kruskal-Wallis across columns");
    cmd_s->add_option("--csv", stats.csv_path, "Input CSV with a header row")->required();
    cmd_s->add_option("--columns", stats.columns_text, "Comma-separated column names")
        ->required();
    cmd_s->add_option("--out", stats.out_path, "JSON report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // bad arguments are validation errors
    }

    try {
        if (cmd_analyze->parsed())
            return cmd_analyze_bridges(analyze);
        if (cmd_m->parsed()) {
            if (metrics.batch_path.empty() &&
                (metrics.pred_path.empty() || metrics.gt_path.empty()))
                throw ValidationError("metrics needs --pred and --gt, or --batch");
            return cmd_metrics(metrics);
        }
        if (cmd_p->parsed()) {
            prep.do_binarize = binarize_opt->count() > 0;
            return cmd_preprocess(prep);
        }
        if (cmd_ph->parsed())
            return cmd_phantom(phantom);
        if (cmd_s->parsed())
            return cmd_stats_compare(stats);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IOError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
