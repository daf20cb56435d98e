// phantom.hpp - synthetic cord/lesion mask generator with closed-form
// ground-truth bridge widths; the validation oracle for the bridge and
// centerline measurements.
#pragma once

#include "sciq/volume.hpp"

namespace sciq {

/// Specification of a straight tube cord tilted in the sagittal plane with a
/// box lesion inside it. The lesion's A-P extent is derived from the gap
/// design so that at the widest lesion row, the midsagittal slice has
/// exactly ventral_gap_voxels spared voxels anterior to the lesion and
/// dorsal_gap_voxels posterior; half_extents[1] is therefore ignored.
struct PhantomSpec {
    Index3 dims{64, 64, 64};
    Triple spacing{0.92, 0.68, 0.92};
    double cord_radius_mm = 4.0;
    double sagittal_tilt_deg = 0.0; // [0, 45]
    struct Lesion {
        Index3 center{32, 32, 32};      // on the cord axis; x is the tube's R-L center
        Index3 half_extents{1, 0, 4};   // voxels; [1] derived from the gaps
    } lesion;
    int ventral_gap_voxels = 2;
    int dorsal_gap_voxels = 1;
};

struct PhantomTruth {
    int midsagittal_index = 0;
    double tilt_deg = 0.0;
    double ventral_mm = 0.0; // uncorrected, = gap * spacing_AP
    double dorsal_mm = 0.0;
    double ventral_mm_corrected = 0.0; // = gap * spacing_AP * cos(tilt)
    double dorsal_mm_corrected = 0.0;
};

struct Phantom {
    BinaryMask cord;
    BinaryMask lesion;
    PhantomTruth truth;
};

/// Deterministic rasterization: a voxel belongs to the cord iff its center
/// lies within cord_radius_mm of the continuous centerline. The tube spans
/// the maximal I-S range around the lesion center for which its full
/// cross-section fits inside the volume; the lesion box (axis-aligned in
/// the tilted frame) is clipped to the cord. Masks are produced in RPI.
Phantom generate_phantom(const PhantomSpec& spec);

} // namespace sciq
