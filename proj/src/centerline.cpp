// centerline.cpp - per-level cord centers, smoothing, tangents, tilt angle.

#include "sciq/centerline.hpp"

#include <algorithm>
#include <cmath>

namespace sciq {

std::size_t Centerline::level_pos(int level) const {
    auto it = std::lower_bound(levels.begin(), levels.end(), level);
    if (it == levels.end() || *it != level)
        throw LookupError("level " + std::to_string(level) + " is not on the centerline");
    return static_cast<std::size_t>(it - levels.begin());
}

Centerline extract_centerline(const BinaryMask& sc, int smooth_window) {
    if (sc.orientation() != "RPI")
        throw ValidationError("centerline extraction expects an RPI mask, got " +
                              sc.orientation());
    if (smooth_window < 1 || smooth_window % 2 == 0)
        throw ValidationError("smoothing window must be a positive odd number");

    const auto& dims = sc.dims();
    std::vector<int> levels;
    std::vector<std::array<double, 2>> raw;
    for (int z = 0; z < dims[2]; ++z) {
        double sx = 0.0, sy = 0.0;
        long n = 0;
        for (int y = 0; y < dims[1]; ++y)
            for (int x = 0; x < dims[0]; ++x)
                if (sc.at(x, y, z)) {
                    sx += x;
                    sy += y;
                    ++n;
                }
        if (n > 0) {
            levels.push_back(z);
            raw.push_back({sx / n, sy / n});
        }
    }
    if (levels.empty())
        throw EmptyInputError("cord mask is empty");
    if (levels.size() == 1)
        throw DegenerateInputError("cord occupies a single level; no tangent defined");

    // Centered moving average over list positions, truncated at the ends.
    const std::size_t n = levels.size();
    const std::size_t half = static_cast<std::size_t>(smooth_window / 2);
    std::vector<std::array<double, 2>> centers(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        double sx = 0.0, sy = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            sx += raw[j][0];
            sy += raw[j][1];
        }
        const double cnt = static_cast<double>(hi - lo + 1);
        centers[i] = {sx / cnt, sy / cnt};
    }

    const Triple& sp = sc.spacing();
    auto position_mm = [&](std::size_t i) -> Vec3 {
        return {centers[i][0] * sp[0], centers[i][1] * sp[1], levels[i] * sp[2]};
    };
    std::vector<Vec3> tangents(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = i == 0 ? 0 : i - 1;
        const std::size_t b = i == n - 1 ? n - 1 : i + 1;
        const Vec3 pa = position_mm(a);
        const Vec3 pb = position_mm(b);
        Vec3 t{pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2]};
        const double norm = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
        tangents[i] = {t[0] / norm, t[1] / norm, t[2] / norm}; // levels increase => t[2] > 0
    }

    Centerline cl;
    cl.levels = std::move(levels);
    cl.centers = std::move(centers);
    cl.tangents = std::move(tangents);
    return cl;
}

double sagittal_angle(const Centerline& cl, int level) {
    const Vec3& t = cl.tangents[cl.level_pos(level)];
    // project onto the (A-P, I-S) plane; angle from +I-S
    return std::atan2(std::abs(t[1]), t[2]);
}

} // namespace sciq
