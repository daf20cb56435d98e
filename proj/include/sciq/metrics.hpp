// metrics.hpp - segmentation evaluation: Dice and lesion-wise detection
// metrics over connected components.
#pragma once

#include <cstdint>
#include <vector>

#include "sciq/volume.hpp"

namespace sciq {

/// Connected-component labeling of a mask. Labels are contiguous 1..k,
/// assigned in order of each component's first voxel in storage order
/// (x fastest, then y, then z); 0 is background.
struct LabeledComponents {
    Index3 dims{};
    std::vector<std::int32_t> labels;
    int count = 0;
    std::vector<std::size_t> voxels_per_component; // indexed by label-1
};

LabeledComponents connected_components(const BinaryMask& mask, int connectivity = 26);

struct LesionWiseMetrics {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    double ppv_l = 0.0;
    double sens_l = 0.0;
    double f1_l = 0.0;
};

/// 2|P^G| / (|P|+|G|); 1 when both masks are empty.
double dice(const BinaryMask& pred, const BinaryMask& gt);

/// Component-level detection counts. A GT component counts as detected when
/// it overlaps any predicted component by at least min_overlap_voxels; a
/// predicted component with no such overlap is a false positive. One
/// prediction may detect several GT components. Rates follow the
/// perfect-empty convention: a rate with zero denominator is 1 when the
/// remaining count is also zero, else 0.
LesionWiseMetrics lesion_wise_counts(const BinaryMask& pred, const BinaryMask& gt,
                                     int connectivity = 26,
                                     std::int64_t min_overlap_voxels = 1);

} // namespace sciq
