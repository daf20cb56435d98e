// volume.hpp - the volumetric data model: Volume3D scalar grids and
// BinaryMask segmentations, plus reorientation.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sciq/geometry.hpp"

namespace sciq {

// Storage hint carried alongside the float grid so that integer-valued
// volumes (e.g. masks) can round-trip through files in their native dtype.
enum class Dtype : std::uint8_t { uint8, int16, int32, float32, float64 };

const char* dtype_name(Dtype d);

/// Scalar voxel grid with spacing, orientation code and voxel->mm affine.
/// Voxels are stored x-fastest; values are held as float32.
class Volume3D {
public:
    Volume3D(Index3 dims, Triple spacing, std::string orientation, Affine4 affine,
             std::vector<float> data, Dtype dtype = Dtype::float32);

    // Convenience constructor with an axis-aligned affine derived from the
    // orientation code, spacing and origin.
    static Volume3D axis_aligned(Index3 dims, Triple spacing, std::string orientation,
                                 Vec3 origin = {0.0, 0.0, 0.0}, float fill = 0.0f,
                                 Dtype dtype = Dtype::float32);

    const Index3& dims() const { return dims_; }
    const Triple& spacing() const { return spacing_; }
    const std::string& orientation() const { return orientation_; }
    const Affine4& affine() const { return affine_; }
    Dtype dtype() const { return dtype_; }
    void set_dtype(Dtype d) { dtype_ = d; }

    std::size_t voxel_count() const { return data_.size(); }
    const std::vector<float>& data() const { return data_; }
    std::vector<float>& data() { return data_; }

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims_[0]) *
                   (static_cast<std::size_t>(y) +
                    static_cast<std::size_t>(dims_[1]) * static_cast<std::size_t>(z));
    }
    float at(int x, int y, int z) const { return data_[index(x, y, z)]; }
    float& at(int x, int y, int z) { return data_[index(x, y, z)]; }

private:
    Index3 dims_;
    Triple spacing_;
    std::string orientation_;
    Affine4 affine_;
    Dtype dtype_;
    std::vector<float> data_;
};

/// A Volume3D whose values are exactly 0 or 1.
class BinaryMask {
public:
    explicit BinaryMask(Volume3D vol);

    const Volume3D& volume() const { return vol_; }
    const Index3& dims() const { return vol_.dims(); }
    const Triple& spacing() const { return vol_.spacing(); }
    const std::string& orientation() const { return vol_.orientation(); }

    bool at(int x, int y, int z) const { return vol_.at(x, y, z) != 0.0f; }
    std::size_t count() const;
    bool empty() const { return count() == 0; }

private:
    Volume3D vol_;
};

std::string geometry_string(const Volume3D& v);
bool same_geometry(const Volume3D& a, const Volume3D& b);
// Throws ValidationError naming both geometries when they differ.
void require_same_geometry(const Volume3D& a, const Volume3D& b, const char* what);

/// Permute/flip the data axes so the volume's orientation equals `target`.
/// The affine is updated so every voxel keeps its physical position; the
/// voxel value multiset is preserved.
Volume3D reorient(const Volume3D& vol, const std::string& target);
BinaryMask reorient(const BinaryMask& mask, const std::string& target);

} // namespace sciq
