// centerline.hpp - spinal cord centerline from a cord mask and the per-level
// sagittal tilt used for angle correction.
#pragma once

#include <array>
#include <vector>

#include "sciq/volume.hpp"

namespace sciq {

/// Per-level cord centers and unit tangents. Levels are the I-S voxel
/// indices where the cord is present, strictly increasing. Tangents are in
/// physical mm space, unit norm, with positive I-S component.
struct Centerline {
    std::vector<int> levels;
    std::vector<std::array<double, 2>> centers; // (R-L, A-P) in voxel units, smoothed
    std::vector<Vec3> tangents;

    std::size_t size() const { return levels.size(); }
    // Position of `level` in the levels list; throws LookupError if absent.
    std::size_t level_pos(int level) const;
};

/// Center of mass per axial slice, smoothed along I-S with a centered moving
/// average (odd window, truncated at the ends); tangents from central finite
/// differences of the smoothed centers scaled by spacing (one-sided at the
/// boundaries). The mask must be in RPI orientation.
Centerline extract_centerline(const BinaryMask& sc, int smooth_window = 5);

/// Angle between the tangent's projection onto the sagittal (A-P, I-S)
/// plane and the +I-S axis, in radians, range [0, pi/2).
double sagittal_angle(const Centerline& cl, int level);

} // namespace sciq
