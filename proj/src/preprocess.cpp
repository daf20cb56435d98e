// preprocess.cpp - resampling, z-score normalization, binarization.

#include "sciq/preprocess.hpp"

#include <algorithm>
#include <cmath>

namespace sciq {

namespace {

// Trilinear sample at continuous voxel coordinates, clamped to the grid so
// resampling a constant volume stays constant at the edges.
float sample_linear(const Volume3D& v, double x, double y, double z) {
    const auto& d = v.dims();
    auto split = [](double u, int dim, int& i0, int& i1, double& f) {
        if (dim == 1) {
            i0 = i1 = 0;
            f = 0.0;
            return;
        }
        u = std::clamp(u, 0.0, static_cast<double>(dim - 1));
        i0 = static_cast<int>(std::floor(u));
        if (i0 > dim - 2)
            i0 = dim - 2;
        i1 = i0 + 1;
        f = u - i0;
    };
    int x0, x1, y0, y1, z0, z1;
    double fx, fy, fz;
    split(x, d[0], x0, x1, fx);
    split(y, d[1], y0, y1, fy);
    split(z, d[2], z0, z1, fz);

    auto lerp = [](double a, double b, double t) { return a + (b - a) * t; };
    const double c00 = lerp(v.at(x0, y0, z0), v.at(x1, y0, z0), fx);
    const double c10 = lerp(v.at(x0, y1, z0), v.at(x1, y1, z0), fx);
    const double c01 = lerp(v.at(x0, y0, z1), v.at(x1, y0, z1), fx);
    const double c11 = lerp(v.at(x0, y1, z1), v.at(x1, y1, z1), fx);
    return static_cast<float>(lerp(lerp(c00, c10, fy), lerp(c01, c11, fy), fz));
}

float sample_nearest(const Volume3D& v, double x, double y, double z) {
    const auto& d = v.dims();
    auto nearest = [](double u, int dim) {
        int i = static_cast<int>(std::floor(u + 0.5));
        return std::clamp(i, 0, dim - 1);
    };
    return v.at(nearest(x, d[0]), nearest(y, d[1]), nearest(z, d[2]));
}

} // namespace

Volume3D resample(const Volume3D& vol, const Triple& target_spacing, Interpolation mode) {
    for (double s : target_spacing)
        if (!(s > 0.0))
            throw ValidationError("target spacing must be positive");

    Index3 ndims;
    Triple scale; // output index -> input index
    for (std::size_t i = 0; i < 3; ++i) {
        const double extent = vol.dims()[i] * vol.spacing()[i];
        // relative slack tolerates float32 header spacing jitter, so
        // resampling a file-roundtripped volume to its own spacing keeps dims
        const double ratio = extent / target_spacing[i];
        ndims[i] = std::max(1, static_cast<int>(std::ceil(ratio * (1.0 - 1e-6))));
        scale[i] = target_spacing[i] / vol.spacing()[i];
    }

    // Scale the direction columns so norms match the new spacing; voxel
    // (0,0,0) keeps its physical position.
    Affine4 naff = vol.affine();
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r)
            naff.m[r][c] *= scale[static_cast<std::size_t>(c)];

    std::vector<float> out(static_cast<std::size_t>(ndims[0]) *
                           static_cast<std::size_t>(ndims[1]) *
                           static_cast<std::size_t>(ndims[2]));
    // snap near-integer sample coordinates so a (numerically) identity
    // resample reproduces the input bit-exactly
    auto snap = [](double u) {
        const double r = std::round(u);
        return std::abs(u - r) < 1e-6 ? r : u;
    };
    std::size_t idx = 0;
    for (int z = 0; z < ndims[2]; ++z) {
        const double uz = snap(z * scale[2]);
        for (int y = 0; y < ndims[1]; ++y) {
            const double uy = snap(y * scale[1]);
            for (int x = 0; x < ndims[0]; ++x, ++idx) {
                const double ux = snap(x * scale[0]);
                out[idx] = mode == Interpolation::linear
                               ? sample_linear(vol, ux, uy, uz)
                               : sample_nearest(vol, ux, uy, uz);
            }
        }
    }
    const Dtype dt = mode == Interpolation::nearest ? vol.dtype() : Dtype::float32;
    return Volume3D(ndims, target_spacing, vol.orientation(), naff, std::move(out), dt);
}

Volume3D zscore_normalize(const Volume3D& vol) {
    const std::size_t n = vol.voxel_count();
    if (n < 2)
        throw ValidationError("z-score normalization needs at least 2 voxels");
    double sum = 0.0;
    for (float v : vol.data())
        sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (float v : vol.data()) {
        const double d = v - mean;
        ss += d * d;
    }
    const double std_dev = std::sqrt(ss / static_cast<double>(n)); // population
    if (std_dev == 0.0)
        throw DegenerateInputError("constant volume: z-score normalization undefined");

    std::vector<float> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<float>((vol.data()[i] - mean) / std_dev);
    return Volume3D(vol.dims(), vol.spacing(), vol.orientation(), vol.affine(), std::move(out),
                    Dtype::float32);
}

BinaryMask binarize(const Volume3D& vol, double threshold) {
    std::vector<float> out(vol.voxel_count());
    for (std::size_t i = 0; i < vol.voxel_count(); ++i)
        out[i] = vol.data()[i] > threshold ? 1.0f : 0.0f;
    return BinaryMask(Volume3D(vol.dims(), vol.spacing(), vol.orientation(), vol.affine(),
                               std::move(out), Dtype::uint8));
}

} // namespace sciq
