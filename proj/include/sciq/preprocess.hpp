// preprocess.hpp - image preparation: resampling to a target resolution,
// z-score intensity normalization, and thresholding to a mask.
#pragma once

#include "sciq/volume.hpp"

namespace sciq {

enum class Interpolation { linear, nearest };

/// Resample onto a grid with the given spacing. Output dims are
/// ceil(dims * spacing / target_spacing); the physical position of voxel
/// (0,0,0) and the axis directions are preserved. Use nearest for masks.
Volume3D resample(const Volume3D& vol, const Triple& target_spacing, Interpolation mode);

/// (v - mean) / std over all voxels, population std. Throws
/// DegenerateInputError for a constant volume.
Volume3D zscore_normalize(const Volume3D& vol);

/// Voxel -> 1 iff value > threshold.
BinaryMask binarize(const Volume3D& vol, double threshold);

} // namespace sciq
