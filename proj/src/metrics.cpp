// metrics.cpp - Dice, connected components, lesion-wise detection counts.

#include "sciq/metrics.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace sciq {

double dice(const BinaryMask& pred, const BinaryMask& gt) {
    require_same_geometry(pred.volume(), gt.volume(), "dice");
    std::int64_t p = 0, g = 0, both = 0;
    const auto& pd = pred.volume().data();
    const auto& gd = gt.volume().data();
    for (std::size_t i = 0; i < pd.size(); ++i) {
        const bool a = pd[i] != 0.0f;
        const bool b = gd[i] != 0.0f;
        p += a;
        g += b;
        both += a && b;
    }
    if (p + g == 0)
        return 1.0; // both empty
    return 2.0 * static_cast<double>(both) / static_cast<double>(p + g);
}

LabeledComponents connected_components(const BinaryMask& mask, int connectivity) {
    if (connectivity != 6 && connectivity != 18 && connectivity != 26)
        throw ValidationError("connectivity must be 6, 18 or 26");
    const int max_manhattan = connectivity == 6 ? 1 : connectivity == 18 ? 2 : 3;

    // Neighbor offsets within the chosen adjacency.
    std::vector<Index3> offsets;
    for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
                if (manhattan > 0 && manhattan <= max_manhattan)
                    offsets.push_back({dx, dy, dz});
            }

    const auto& dims = mask.dims();
    LabeledComponents out;
    out.dims = dims;
    out.labels.assign(mask.volume().voxel_count(), 0);

    std::vector<std::size_t> stack;
    for (int z = 0; z < dims[2]; ++z)
        for (int y = 0; y < dims[1]; ++y)
            for (int x = 0; x < dims[0]; ++x) {
                const std::size_t seed = mask.volume().index(x, y, z);
                if (!mask.at(x, y, z) || out.labels[seed] != 0)
                    continue;
                const std::int32_t label = ++out.count;
                std::size_t voxels = 0;
                out.labels[seed] = label;
                stack.assign(1, seed);
                while (!stack.empty()) {
                    const std::size_t cur = stack.back();
                    stack.pop_back();
                    ++voxels;
                    const int cz = static_cast<int>(cur / (static_cast<std::size_t>(dims[0]) *
                                                           static_cast<std::size_t>(dims[1])));
                    const std::size_t rem =
                        cur % (static_cast<std::size_t>(dims[0]) *
                               static_cast<std::size_t>(dims[1]));
                    const int cy = static_cast<int>(rem / static_cast<std::size_t>(dims[0]));
                    const int cx = static_cast<int>(rem % static_cast<std::size_t>(dims[0]));
                    for (const auto& o : offsets) {
                        const int nx = cx + o[0], ny = cy + o[1], nz = cz + o[2];
                        if (nx < 0 || ny < 0 || nz < 0 || nx >= dims[0] || ny >= dims[1] ||
                            nz >= dims[2])
                            continue;
                        const std::size_t ni = mask.volume().index(nx, ny, nz);
                        if (mask.volume().data()[ni] != 0.0f && out.labels[ni] == 0) {
                            out.labels[ni] = label;
                            stack.push_back(ni);
                        }
                    }
                }
                out.voxels_per_component.push_back(voxels);
            }
    return out;
}

namespace {

double rate_or_convention(std::int64_t num, std::int64_t denom, std::int64_t other) {
    if (denom == 0)
        return other == 0 ? 1.0 : 0.0;
    return static_cast<double>(num) / static_cast<double>(denom);
}

} // namespace

LesionWiseMetrics lesion_wise_counts(const BinaryMask& pred, const BinaryMask& gt,
                                     int connectivity, std::int64_t min_overlap_voxels) {
    require_same_geometry(pred.volume(), gt.volume(), "lesion-wise metrics");
    if (min_overlap_voxels < 1)
        throw ValidationError("min_overlap_voxels must be >= 1");

    const LabeledComponents pc = connected_components(pred, connectivity);
    const LabeledComponents gc = connected_components(gt, connectivity);

    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> overlap;
    for (std::size_t i = 0; i < pc.labels.size(); ++i)
        if (pc.labels[i] != 0 && gc.labels[i] != 0)
            ++overlap[{gc.labels[i], pc.labels[i]}];

    std::vector<bool> gt_detected(static_cast<std::size_t>(gc.count), false);
    std::vector<bool> pred_matched(static_cast<std::size_t>(pc.count), false);
    for (const auto& [key, voxels] : overlap)
        if (voxels >= min_overlap_voxels) {
            gt_detected[static_cast<std::size_t>(key.first - 1)] = true;
            pred_matched[static_cast<std::size_t>(key.second - 1)] = true;
        }

    LesionWiseMetrics m;
    for (bool d : gt_detected)
        d ? ++m.tp : ++m.fn;
    for (bool d : pred_matched)
        if (!d)
            ++m.fp;

    m.ppv_l = rate_or_convention(m.tp, m.tp + m.fp, m.fn);
    m.sens_l = rate_or_convention(m.tp, m.tp + m.fn, m.fp);
    m.f1_l = (m.ppv_l + m.sens_l) > 0.0
                 ? 2.0 * m.ppv_l * m.sens_l / (m.ppv_l + m.sens_l)
                 : 0.0;
    return m;
}

} // namespace sciq
