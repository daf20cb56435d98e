// volume.cpp - Volume3D/BinaryMask construction checks, orientation codes,
// and reorientation.

#include "sciq/volume.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace sciq {

const char* dtype_name(Dtype d) {
    switch (d) {
    case Dtype::uint8: return "uint8";
    case Dtype::int16: return "int16";
    case Dtype::int32: return "int32";
    case Dtype::float32: return "float32";
    case Dtype::float64: return "float64";
    }
    return "?";
}

std::string orientation_from_affine(const Affine4& affine) {
    std::string code(3, '?');
    static const char start_letter[3][2] = {{'L', 'R'}, {'P', 'A'}, {'I', 'S'}};
    bool used[3] = {false, false, false};
    for (int c = 0; c < 3; ++c) {
        Vec3 col = affine.column(c);
        int dominant = 0;
        for (int r = 1; r < 3; ++r)
            if (std::abs(col[r]) > std::abs(col[dominant]))
                dominant = r;
        if (col[dominant] == 0.0 || used[dominant])
            throw ValidationError("affine direction matrix is singular; cannot derive orientation");
        used[dominant] = true;
        // positive direction -> axis starts at the negative anatomical side
        code[c] = start_letter[dominant][col[dominant] > 0.0 ? 0 : 1];
    }
    return code;
}

Affine4 make_axis_aligned_affine(const std::string& orientation, const Triple& spacing,
                                 const Vec3& origin) {
    if (!is_valid_orientation(orientation))
        throw ValidationError("invalid orientation code '" + orientation + "'");
    Affine4 a;
    a.m[3][3] = 1.0;
    for (int c = 0; c < 3; ++c) {
        int axis = 0, sign = 0;
        orientation_letter_info(orientation[static_cast<std::size_t>(c)], axis, sign);
        a.m[axis][c] = sign * spacing[static_cast<std::size_t>(c)];
        a.m[c][3] = origin[static_cast<std::size_t>(c)];
    }
    return a;
}

Volume3D::Volume3D(Index3 dims, Triple spacing, std::string orientation, Affine4 affine,
                   std::vector<float> data, Dtype dtype)
    : dims_(dims), spacing_(spacing), orientation_(std::move(orientation)), affine_(affine),
      dtype_(dtype), data_(std::move(data)) {
    for (int i = 0; i < 3; ++i) {
        if (dims_[static_cast<std::size_t>(i)] < 1)
            throw ValidationError("volume dims must be >= 1 per axis");
        if (!(spacing_[static_cast<std::size_t>(i)] > 0.0))
            throw ValidationError("voxel spacing must be positive");
    }
    if (!is_valid_orientation(orientation_))
        throw ValidationError("invalid orientation code '" + orientation_ + "'");
    const std::size_t expected = static_cast<std::size_t>(dims_[0]) *
                                 static_cast<std::size_t>(dims_[1]) *
                                 static_cast<std::size_t>(dims_[2]);
    if (data_.size() != expected)
        throw ValidationError("data size does not match dims");
    for (int c = 0; c < 3; ++c) {
        const double norm = affine_.column_norm(c);
        const double sp = spacing_[static_cast<std::size_t>(c)];
        if (std::abs(norm - sp) > 1e-4 * sp)
            throw ValidationError("affine column norms do not match spacing");
    }
}

Volume3D Volume3D::axis_aligned(Index3 dims, Triple spacing, std::string orientation,
                                Vec3 origin, float fill, Dtype dtype) {
    const std::size_t n = static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
                          static_cast<std::size_t>(dims[2]);
    Affine4 aff = make_axis_aligned_affine(orientation, spacing, origin);
    return Volume3D(dims, spacing, std::move(orientation), aff, std::vector<float>(n, fill),
                    dtype);
}

BinaryMask::BinaryMask(Volume3D vol) : vol_(std::move(vol)) {
    for (float v : vol_.data())
        if (v != 0.0f && v != 1.0f)
            throw ValidationError("mask contains values other than 0 and 1");
}

std::size_t BinaryMask::count() const {
    std::size_t n = 0;
    for (float v : vol_.data())
        n += (v != 0.0f);
    return n;
}

std::string geometry_string(const Volume3D& v) {
    std::ostringstream os;
    os << "dims (" << v.dims()[0] << "," << v.dims()[1] << "," << v.dims()[2] << ") spacing ("
       << v.spacing()[0] << "," << v.spacing()[1] << "," << v.spacing()[2] << ") "
       << v.orientation();
    return os.str();
}

bool same_geometry(const Volume3D& a, const Volume3D& b) {
    if (a.dims() != b.dims() || a.orientation() != b.orientation())
        return false;
    for (std::size_t i = 0; i < 3; ++i)
        if (std::abs(a.spacing()[i] - b.spacing()[i]) > 1e-4 * a.spacing()[i])
            return false;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 4; ++c)
            if (std::abs(a.affine()(r, c) - b.affine()(r, c)) > 1e-3)
                return false;
    return true;
}

void require_same_geometry(const Volume3D& a, const Volume3D& b, const char* what) {
    if (!same_geometry(a, b))
        throw ValidationError(std::string(what) + ": geometry mismatch between " +
                              geometry_string(a) + " and " + geometry_string(b));
}

Volume3D reorient(const Volume3D& vol, const std::string& target) {
    if (!is_valid_orientation(target))
        throw ValidationError("invalid orientation code '" + target + "'");
    if (vol.orientation() == target)
        return vol;

    // Map each target axis to its source axis and flip flag.
    int perm[3];
    bool flip[3];
    for (int t = 0; t < 3; ++t) {
        int want_axis = 0, want_sign = 0;
        orientation_letter_info(target[static_cast<std::size_t>(t)], want_axis, want_sign);
        int found = -1;
        for (int s = 0; s < 3; ++s) {
            int have_axis = 0, have_sign = 0;
            orientation_letter_info(vol.orientation()[static_cast<std::size_t>(s)], have_axis,
                                    have_sign);
            if (have_axis == want_axis) {
                found = s;
                flip[t] = (have_sign != want_sign);
                break;
            }
        }
        perm[t] = found;
    }

    Index3 ndims;
    Triple nspacing;
    for (int t = 0; t < 3; ++t) {
        ndims[static_cast<std::size_t>(t)] = vol.dims()[static_cast<std::size_t>(perm[t])];
        nspacing[static_cast<std::size_t>(t)] = vol.spacing()[static_cast<std::size_t>(perm[t])];
    }

    // New affine: permuted (and possibly negated) columns; flipped axes move
    // the origin to the old last voxel along that axis.
    Affine4 naff;
    naff.m[3][3] = 1.0;
    for (int r = 0; r < 3; ++r)
        naff.m[r][3] = vol.affine()(r, 3);
    for (int t = 0; t < 3; ++t) {
        const int s = perm[t];
        const double sign = flip[t] ? -1.0 : 1.0;
        for (int r = 0; r < 3; ++r)
            naff.m[r][t] = sign * vol.affine()(r, s);
        if (flip[t]) {
            const double last = vol.dims()[static_cast<std::size_t>(s)] - 1;
            for (int r = 0; r < 3; ++r)
                naff.m[r][3] += vol.affine()(r, s) * last;
        }
    }

    std::vector<float> ndata(vol.voxel_count());
    Volume3D out(ndims, nspacing, target, naff, std::move(ndata), vol.dtype());
    Index3 it{};
    for (it[2] = 0; it[2] < ndims[2]; ++it[2])
        for (it[1] = 0; it[1] < ndims[1]; ++it[1])
            for (it[0] = 0; it[0] < ndims[0]; ++it[0]) {
                Index3 src{};
                for (int t = 0; t < 3; ++t) {
                    int v = it[static_cast<std::size_t>(t)];
                    if (flip[t])
                        v = ndims[static_cast<std::size_t>(t)] - 1 - v;
                    src[static_cast<std::size_t>(perm[t])] = v;
                }
                out.at(it[0], it[1], it[2]) = vol.at(src[0], src[1], src[2]);
            }
    return out;
}

BinaryMask reorient(const BinaryMask& mask, const std::string& target) {
    return BinaryMask(reorient(mask.volume(), target));
}

} // namespace sciq
