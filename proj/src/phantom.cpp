// phantom.cpp - tilted-tube cord with a box lesion and closed-form truth.
//
// The tube axis lies in the sagittal plane through the lesion center,
// tilted by the requested angle towards anterior. In-plane (constant z) the
// cord occupies |y - cy(z)| <= r/(cos(tilt) * spacing_AP) voxels around the
// drifting center cy(z). The lesion box is axis-aligned in the tilted frame
// with its A-P half-extent derived from the designed spared counts, so that
// at the midsagittal slice every unclipped lesion row has exactly
// ventral_gap (dorsal_gap) spared cord voxels anterior (posterior) of the
// lesion edge: floor(a) - floor(a - g) = g for integer g regardless of the
// fractional center a.

#include "sciq/phantom.hpp"

#include <algorithm>
#include <cmath>

namespace sciq {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Phantom generate_phantom(const PhantomSpec& spec) {
    const auto& dims = spec.dims;
    const auto& sp = spec.spacing;
    for (int i = 0; i < 3; ++i) {
        if (dims[static_cast<std::size_t>(i)] < 1)
            throw ValidationError("phantom dims must be >= 1");
        if (!(sp[static_cast<std::size_t>(i)] > 0.0))
            throw ValidationError("phantom spacing must be positive");
    }
    if (!(spec.cord_radius_mm > 0.0))
        throw ValidationError("cord radius must be positive");
    if (spec.sagittal_tilt_deg < 0.0 || spec.sagittal_tilt_deg > 45.0)
        throw ValidationError("sagittal tilt must be in [0, 45] degrees");
    if (spec.ventral_gap_voxels < 0 || spec.dorsal_gap_voxels < 0)
        throw ValidationError("gap voxel counts must be >= 0");
    if (spec.lesion.half_extents[0] < 0 || spec.lesion.half_extents[2] < 0)
        throw ValidationError("lesion half extents must be >= 0");

    const double r = spec.cord_radius_mm;
    const double theta = spec.sagittal_tilt_deg * kPi / 180.0;
    const double cos_t = std::cos(theta);
    const double sin_t = std::sin(theta);
    const int cx = spec.lesion.center[0];
    const int cy = spec.lesion.center[1];
    const int cz = spec.lesion.center[2];

    // axis direction and in-plane normal, mm space
    const Vec3 axis_d{0.0, sin_t, cos_t};
    const Vec3 axis_e{0.0, cos_t, -sin_t};
    const Vec3 a0{cx * sp[0], cy * sp[1], cz * sp[2]};

    const double rc_inplane = r / cos_t;           // mm, A-P half-width of a cut
    const double rc_vox = rc_inplane / sp[1];      // voxels
    const double rx_vox = r / sp[0];               // R-L half-width, voxels

    // Derived lesion box: A-P half-extent and center offset along axis_e so
    // the designed window is [cy(z) - rc + dg, cy(z) + rc - vg] in voxels.
    const int vg = spec.ventral_gap_voxels;
    const int dg = spec.dorsal_gap_voxels;
    const double hy = r - (vg + dg) * sp[1] * cos_t / 2.0;
    if (!(hy > 0.0))
        throw ValidationError("designed gaps exceed the cord's A-P extent");
    const double offset_e = (dg - vg) * sp[1] * cos_t / 2.0;
    const double hx = spec.lesion.half_extents[0] * sp[0];
    const double hz = spec.lesion.half_extents[2] * sp[2];

    // The designed A-P window must survive the box's own z'-constraint at
    // the lesion-center row, otherwise the gaps there would be clipped.
    const double widest_edge = rc_inplane - std::min(vg, dg) * sp[1];
    if (hz < widest_edge * sin_t)
        throw ValidationError("lesion I-S half-extent too small to realize the designed "
                              "gaps at this tilt");

    // Designed window must contain at least one voxel at the midsagittal
    // lesion-center row.
    if (std::floor(cy + rc_vox - vg) < std::ceil(cy - rc_vox + dg))
        throw ValidationError("designed lesion contains no voxels (gaps too large)");

    if (cx - rx_vox < 0.0 || cx + rx_vox > dims[0] - 1.0)
        throw ValidationError("cord tube does not fit the volume along R-L");

    // Maximal contiguous I-S range around the lesion center where the full
    // cross-section fits along A-P.
    auto center_y = [&](int z) { return cy + (z - cz) * sp[2] * sin_t / (cos_t * sp[1]); };
    auto fits = [&](int z) {
        const double c = center_y(z);
        return c - rc_vox >= 0.0 && c + rc_vox <= dims[1] - 1.0;
    };
    if (cz < 0 || cz >= dims[2] || !fits(cz))
        throw ValidationError("cord tube does not fit the volume at the lesion center");
    int z_lo = cz, z_hi = cz;
    while (z_lo > 0 && fits(z_lo - 1))
        --z_lo;
    while (z_hi < dims[2] - 1 && fits(z_hi + 1))
        ++z_hi;
    if (z_hi == z_lo)
        throw ValidationError("cord tube spans a single level; volume too small");

    // Lesion box must stay within the tube's I-S range.
    const double box_cz_mm = cz * sp[2] + offset_e * axis_e[2];
    const double box_halfspan_z = hy * sin_t + hz * cos_t;
    if ((box_cz_mm - box_halfspan_z) / sp[2] < z_lo - 0.5 ||
        (box_cz_mm + box_halfspan_z) / sp[2] > z_hi + 0.5)
        throw ValidationError("lesion exceeds the cord's I-S extent");

    Volume3D cord_vol = Volume3D::axis_aligned(dims, sp, "RPI", {0, 0, 0}, 0.0f, Dtype::uint8);
    Volume3D lesion_vol = Volume3D::axis_aligned(dims, sp, "RPI", {0, 0, 0}, 0.0f, Dtype::uint8);

    const Vec3 box_center{a0[0] + offset_e * axis_e[0], a0[1] + offset_e * axis_e[1],
                          a0[2] + offset_e * axis_e[2]};
    const int x_lo = static_cast<int>(std::ceil(cx - rx_vox));
    const int x_hi = static_cast<int>(std::floor(cx + rx_vox));
    const double r2 = r * r;
    // Designed specs can place voxel centers exactly on a boundary (e.g.
    // radius an integer multiple of the spacing). Break those ties
    // inclusively on both shapes so the spared counts stay exact.
    const double tie_eps = 1e-9;

    for (int z = z_lo; z <= z_hi; ++z) {
        const double c = center_y(z);
        const int y_lo = std::max(0, static_cast<int>(std::floor(c - rc_vox)));
        const int y_hi = std::min(dims[1] - 1, static_cast<int>(std::ceil(c + rc_vox)));
        for (int y = y_lo; y <= y_hi; ++y)
            for (int x = x_lo; x <= x_hi; ++x) {
                const Vec3 p{x * sp[0], y * sp[1], z * sp[2]};
                const Vec3 d{p[0] - a0[0], p[1] - a0[1], p[2] - a0[2]};
                const double along = d[1] * axis_d[1] + d[2] * axis_d[2];
                const double dist2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] - along * along;
                if (dist2 > r2 + tie_eps)
                    continue;
                cord_vol.at(x, y, z) = 1.0f;

                const Vec3 u{p[0] - box_center[0], p[1] - box_center[1], p[2] - box_center[2]};
                const double ue = u[1] * axis_e[1] + u[2] * axis_e[2];
                const double ud = u[1] * axis_d[1] + u[2] * axis_d[2];
                if (std::abs(u[0]) <= hx + tie_eps && std::abs(ue) <= hy + tie_eps &&
                    std::abs(ud) <= hz + tie_eps)
                    lesion_vol.at(x, y, z) = 1.0f;
            }
    }

    PhantomTruth truth;
    truth.midsagittal_index = cx;
    truth.tilt_deg = spec.sagittal_tilt_deg;
    truth.ventral_mm = vg * sp[1];
    truth.dorsal_mm = dg * sp[1];
    truth.ventral_mm_corrected = vg * sp[1] * cos_t;
    truth.dorsal_mm_corrected = dg * sp[1] * cos_t;

    BinaryMask lesion_mask{std::move(lesion_vol)};
    if (lesion_mask.empty())
        throw ValidationError("designed lesion contains no voxels");
    return Phantom{BinaryMask(std::move(cord_vol)), std::move(lesion_mask), truth};
}

} // namespace sciq
