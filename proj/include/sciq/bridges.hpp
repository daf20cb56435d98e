// bridges.hpp - ventral/dorsal tissue bridge widths measured from cord and
// lesion masks, per sagittal slice, with optional angle correction.
//
// A bridge is the spared cord tissue (cord AND NOT lesion) between the
// lesion edge and the cord boundary. Per I-S row the ventral count is the
// number of spared voxels strictly anterior to the lesion's most anterior
// voxel in that row, the dorsal count symmetric on the posterior side. Row
// counts are converted to mm along A-P (times cos(tilt) when angle
// correction is on) and each width is the minimum over the slice's lesion
// rows.
#pragma once

#include <optional>
#include <vector>

#include "sciq/centerline.hpp"
#include "sciq/volume.hpp"

namespace sciq {

struct BridgeMeasurement {
    int sagittal_index = 0;
    // Absent when the slice contains no lesion voxel (distinct from 0).
    std::optional<double> ventral_width_mm;
    std::optional<double> dorsal_width_mm;
    // I-S row where each minimum occurs; absent when the width is 0 or the
    // slice has no lesion.
    std::optional<int> min_row_ventral;
    std::optional<int> min_row_dorsal;
    // Mean sagittal tilt over the measured rows, degrees.
    std::optional<double> mean_angle_deg;
};

struct BridgeOptions {
    bool all_slices = false;
    bool angle_correct = true;
    int smooth_window = 5; // centerline smoothing, odd
};

struct BridgeReport {
    int midsagittal_index = 0;
    bool angle_corrected = true;
    bool lesion_absent = false;       // lesion mask had no voxels at all
    bool lesion_outside_cord = false; // some lesion voxels were not inside the cord
    std::vector<BridgeMeasurement> per_slice; // sorted by sagittal_index
    Triple spacing{};
};

/// Middle slice of all sagittal slices where the cord is visible
/// (lower-middle on ties). Throws EmptyInputError for an empty mask.
int midsagittal_index(const BinaryMask& sc);

/// Measure one sagittal slice. Lesion voxels outside the cord are dropped
/// (the lesion edge is taken on the cord-intersected lesion); when that
/// happens *lesion_outside_cord is set if non-null.
BridgeMeasurement measure_bridges_slice(const BinaryMask& sc, const BinaryMask& lesion,
                                        int sagittal, const Centerline& cl,
                                        bool angle_correct,
                                        bool* lesion_outside_cord = nullptr);

/// Measure the midsagittal slice, or every sagittal slice containing lesion
/// when opts.all_slices is set. Masks must share geometry and be in RPI.
BridgeReport analyze_bridges(const BinaryMask& sc, const BinaryMask& lesion,
                             const BridgeOptions& opts = {});

} // namespace sciq
