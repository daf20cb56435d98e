// bridges.cpp - midsagittal slice selection and ventral/dorsal bridge
// width measurement.

#include "sciq/bridges.hpp"

#include <cmath>
#include <limits>

namespace sciq {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int midsagittal_index(const BinaryMask& sc) {
    const auto& dims = sc.dims();
    std::vector<int> slices;
    for (int x = 0; x < dims[0]; ++x) {
        bool any = false;
        for (int z = 0; z < dims[2] && !any; ++z)
            for (int y = 0; y < dims[1] && !any; ++y)
                any = sc.at(x, y, z);
        if (any)
            slices.push_back(x);
    }
    if (slices.empty())
        throw EmptyInputError("cord mask is empty");
    return slices[(slices.size() - 1) / 2]; // lower middle on even counts
}

BridgeMeasurement measure_bridges_slice(const BinaryMask& sc, const BinaryMask& lesion,
                                        int sagittal, const Centerline& cl, bool angle_correct,
                                        bool* lesion_outside_cord) {
    require_same_geometry(sc.volume(), lesion.volume(), "bridge measurement");
    const auto& dims = sc.dims();
    if (sagittal < 0 || sagittal >= dims[0])
        throw ValidationError("sagittal index " + std::to_string(sagittal) + " out of bounds");

    const double spacing_ap = sc.spacing()[1];
    const int s = sagittal;

    BridgeMeasurement m;
    m.sagittal_index = s;
    double best_v = std::numeric_limits<double>::infinity();
    double best_d = std::numeric_limits<double>::infinity();
    int best_v_row = -1, best_d_row = -1;
    double angle_sum = 0.0;
    int rows = 0;

    for (int z = 0; z < dims[2]; ++z) {
        // Lesion extent along A-P in this row, restricted to the cord.
        int y_min = -1, y_max = -1;
        for (int y = 0; y < dims[1]; ++y) {
            if (!lesion.at(s, y, z))
                continue;
            if (!sc.at(s, y, z)) {
                if (lesion_outside_cord)
                    *lesion_outside_cord = true;
                continue;
            }
            if (y_min < 0)
                y_min = y;
            y_max = y;
        }
        if (y_min < 0)
            continue; // no in-cord lesion in this row

        int ventral_count = 0, dorsal_count = 0;
        for (int y = 0; y < dims[1]; ++y) {
            if (!sc.at(s, y, z) || lesion.at(s, y, z))
                continue; // spared = cord AND NOT lesion
            if (y > y_max)
                ++ventral_count;
            else if (y < y_min)
                ++dorsal_count;
        }

        const double theta = sagittal_angle(cl, z);
        const double factor = angle_correct ? std::cos(theta) : 1.0;
        const double vw = ventral_count * spacing_ap * factor;
        const double dw = dorsal_count * spacing_ap * factor;
        if (vw < best_v) {
            best_v = vw;
            best_v_row = z;
        }
        if (dw < best_d) {
            best_d = dw;
            best_d_row = z;
        }
        angle_sum += theta;
        ++rows;
    }

    if (rows == 0)
        return m; // widths stay absent: no lesion in this slice
    m.ventral_width_mm = best_v;
    m.dorsal_width_mm = best_d;
    if (best_v > 0.0)
        m.min_row_ventral = best_v_row;
    if (best_d > 0.0)
        m.min_row_dorsal = best_d_row;
    m.mean_angle_deg = angle_sum / rows * 180.0 / kPi;
    return m;
}

BridgeReport analyze_bridges(const BinaryMask& sc, const BinaryMask& lesion,
                             const BridgeOptions& opts) {
    require_same_geometry(sc.volume(), lesion.volume(), "bridge analysis");
    if (sc.orientation() != "RPI")
        throw ValidationError("bridge analysis expects RPI masks, got " + sc.orientation());
    if (sc.empty())
        throw EmptyInputError("cord mask is empty");

    BridgeReport report;
    report.angle_corrected = opts.angle_correct;
    report.spacing = sc.spacing();
    report.midsagittal_index = midsagittal_index(sc);

    if (lesion.empty()) {
        report.lesion_absent = true;
        return report;
    }

    const Centerline cl = extract_centerline(sc, opts.smooth_window);
    bool outside = false;
    if (opts.all_slices) {
        const auto& dims = sc.dims();
        for (int s = 0; s < dims[0]; ++s) {
            bool has_lesion = false;
            for (int z = 0; z < dims[2] && !has_lesion; ++z)
                for (int y = 0; y < dims[1] && !has_lesion; ++y)
                    has_lesion = lesion.at(s, y, z) && sc.at(s, y, z);
            if (!has_lesion)
                continue;
            report.per_slice.push_back(
                measure_bridges_slice(sc, lesion, s, cl, opts.angle_correct, &outside));
        }
    } else {
        report.per_slice.push_back(measure_bridges_slice(
            sc, lesion, report.midsagittal_index, cl, opts.angle_correct, &outside));
    }
    report.lesion_outside_cord = outside;
    return report;
}

} // namespace sciq
