// nifti.hpp - NIfTI-1 single-file reader/writer (.nii, .nii.gz).
#pragma once

#include <string>

#include "sciq/volume.hpp"

namespace sciq {

/// Read a NIfTI-1 volume. Accepts plain or gzip-compressed files and both
/// byte orders. The affine comes from the sform when present, the qform
/// otherwise, and defaults to identity direction with header pixdims.
/// Supported on-disk dtypes: uint8, int16, int32, float32, float64; the
/// scl_slope/scl_inter scaling is applied on load. 4-D files with trailing
/// singleton axes are squeezed to 3-D.
Volume3D read_nifti(const std::string& path);

/// Write a NIfTI-1 single file; gzip-compressed when the path ends in ".gz".
/// The sform encodes the affine. Data is written as float32 unless the
/// volume's dtype hint is lossless for its values. Output is little-endian
/// and the write is atomic (temp file + rename).
void write_nifti(const Volume3D& vol, const std::string& path);

} // namespace sciq
