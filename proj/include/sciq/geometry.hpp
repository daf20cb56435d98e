// geometry.hpp - index/spacing triples, the 4x4 voxel-to-mm affine, and
// anatomical orientation codes.
//
// Orientation convention: each letter names the anatomical position of the
// FIRST voxel along that axis, so "RPI" means axis 0 runs Right->Left,
// axis 1 Posterior->Anterior, axis 2 Inferior->Superior. Physical space is
// RAS+ (+x Right, +y Anterior, +z Superior), so an axis whose letter is "R"
// has a direction vector pointing towards -x.
#pragma once

#include <array>
#include <cmath>
#include <string>

#include "sciq/errors.hpp"

namespace sciq {

using Index3 = std::array<int, 3>;
using Triple = std::array<double, 3>;
using Vec3 = std::array<double, 3>;

struct Affine4 {
    // row-major, maps homogeneous voxel indices to physical mm
    std::array<std::array<double, 4>, 4> m{};

    static Affine4 identity() {
        Affine4 a;
        for (int i = 0; i < 4; ++i)
            a.m[i][i] = 1.0;
        return a;
    }

    double& operator()(int r, int c) { return m[r][c]; }
    double operator()(int r, int c) const { return m[r][c]; }

    Vec3 apply(double i, double j, double k) const {
        Vec3 out;
        for (int r = 0; r < 3; ++r)
            out[r] = m[r][0] * i + m[r][1] * j + m[r][2] * k + m[r][3];
        return out;
    }
    Vec3 apply(const Index3& idx) const {
        return apply(static_cast<double>(idx[0]), static_cast<double>(idx[1]),
                     static_cast<double>(idx[2]));
    }

    Vec3 column(int c) const { return {m[0][c], m[1][c], m[2][c]}; }
    double column_norm(int c) const {
        return std::sqrt(m[0][c] * m[0][c] + m[1][c] * m[1][c] + m[2][c] * m[2][c]);
    }
};

// Letter -> (anatomical axis, sign of the axis direction in RAS+).
// "R" starts Right and runs to the Left, i.e. points towards -x.
inline bool orientation_letter_info(char letter, int& anat_axis, int& direction_sign) {
    switch (letter) {
    case 'R': anat_axis = 0; direction_sign = -1; return true;
    case 'L': anat_axis = 0; direction_sign = +1; return true;
    case 'A': anat_axis = 1; direction_sign = -1; return true;
    case 'P': anat_axis = 1; direction_sign = +1; return true;
    case 'S': anat_axis = 2; direction_sign = -1; return true;
    case 'I': anat_axis = 2; direction_sign = +1; return true;
    default: return false;
    }
}

inline bool is_valid_orientation(const std::string& code) {
    if (code.size() != 3)
        return false;
    bool seen[3] = {false, false, false};
    for (char c : code) {
        int axis, sign;
        if (!orientation_letter_info(c, axis, sign) || seen[axis])
            return false;
        seen[axis] = true;
    }
    return true;
}

// Derive the 3-letter code from the affine's direction columns. Each column
// is assigned the anatomical axis of its dominant component; the letter is
// the direction the axis starts from.
std::string orientation_from_affine(const Affine4& affine);

// Axis-aligned affine for a given orientation code, spacing and origin.
Affine4 make_axis_aligned_affine(const std::string& orientation, const Triple& spacing,
                                 const Vec3& origin = {0.0, 0.0, 0.0});

} // namespace sciq
