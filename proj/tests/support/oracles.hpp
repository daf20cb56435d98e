// Independent brute-force oracles used by the unit and acceptance suites.
// These deliberately avoid the production code paths: union-find instead of
// BFS labeling, all-pairs overlap scans, direct rank formulas, and a
// closed-form chi-square tail for df = 2.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "sciq/volume.hpp"

namespace testutil {

// -- connected components via union-find over all voxel pairs --------------

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

// Root id per voxel (size_t max for background), by exhaustively uniting
// every adjacent foreground pair under the given connectivity.
inline std::vector<std::size_t> oracle_components(const sciq::BinaryMask& mask,
                                                  int connectivity) {
    const auto& dims = mask.dims();
    const auto& vol = mask.volume();
    const int max_manhattan = connectivity == 6 ? 1 : connectivity == 18 ? 2 : 3;
    UnionFind uf(vol.voxel_count());
    for (int z = 0; z < dims[2]; ++z)
        for (int y = 0; y < dims[1]; ++y)
            for (int x = 0; x < dims[0]; ++x) {
                if (!mask.at(x, y, z))
                    continue;
                for (int dz = -1; dz <= 1; ++dz)
                    for (int dy = -1; dy <= 1; ++dy)
                        for (int dx = -1; dx <= 1; ++dx) {
                            const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
                            if (manhattan == 0 || manhattan > max_manhattan)
                                continue;
                            const int nx = x + dx, ny = y + dy, nz = z + dz;
                            if (nx < 0 || ny < 0 || nz < 0 || nx >= dims[0] || ny >= dims[1] ||
                                nz >= dims[2] || !mask.at(nx, ny, nz))
                                continue;
                            uf.unite(vol.index(x, y, z), vol.index(nx, ny, nz));
                        }
            }
    std::vector<std::size_t> roots(vol.voxel_count(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < vol.voxel_count(); ++i)
        if (vol.data()[i] != 0.0f)
            roots[i] = uf.find(i);
    return roots;
}

struct OracleLesionCounts {
    std::int64_t tp = 0, fp = 0, fn = 0;
};

// Exhaustive all-pairs overlap matching between oracle components.
inline OracleLesionCounts oracle_lesion_counts(const sciq::BinaryMask& pred,
                                               const sciq::BinaryMask& gt, int connectivity,
                                               std::int64_t min_overlap) {
    const auto proots = oracle_components(pred, connectivity);
    const auto groots = oracle_components(gt, connectivity);
    std::set<std::size_t> pred_comps, gt_comps;
    for (auto r : proots)
        if (r != static_cast<std::size_t>(-1))
            pred_comps.insert(r);
    for (auto r : groots)
        if (r != static_cast<std::size_t>(-1))
            gt_comps.insert(r);

    OracleLesionCounts out;
    std::set<std::size_t> matched_pred;
    for (auto g : gt_comps) {
        bool detected = false;
        for (auto p : pred_comps) {
            std::int64_t overlap = 0;
            for (std::size_t i = 0; i < proots.size(); ++i)
                overlap += (groots[i] == g && proots[i] == p);
            if (overlap >= min_overlap) {
                detected = true;
                matched_pred.insert(p);
            }
        }
        detected ? ++out.tp : ++out.fn;
    }
    for (auto p : pred_comps) {
        bool any = false;
        for (auto g : gt_comps) {
            std::int64_t overlap = 0;
            for (std::size_t i = 0; i < proots.size(); ++i)
                overlap += (groots[i] == g && proots[i] == p);
            any = any || overlap >= min_overlap;
        }
        if (!any)
            ++out.fp;
    }
    return out;
}

// Set-arithmetic Dice.
inline double oracle_dice(const sciq::BinaryMask& pred, const sciq::BinaryMask& gt) {
    std::int64_t p = 0, g = 0, both = 0;
    for (std::size_t i = 0; i < pred.volume().voxel_count(); ++i) {
        const bool a = pred.volume().data()[i] != 0.0f;
        const bool b = gt.volume().data()[i] != 0.0f;
        p += a;
        g += b;
        both += a && b;
    }
    return (p + g) == 0 ? 1.0 : 2.0 * static_cast<double>(both) / static_cast<double>(p + g);
}

// -- Kruskal-Wallis by direct evaluation of the rank formula ----------------

// O(n^2) mid-ranks: rank(v) = |{u < v}| + (|{u == v}| + 1) / 2.
inline double oracle_midrank(const std::vector<double>& pooled, double v) {
    std::int64_t less = 0, equal = 0;
    for (double u : pooled) {
        less += u < v;
        equal += u == v;
    }
    return static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
}

struct OracleKW {
    double h = 0.0;
    double p = 0.0; // valid only for 3 groups (df = 2, closed form)
};

inline OracleKW oracle_kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    std::vector<double> pooled;
    for (const auto& g : groups)
        pooled.insert(pooled.end(), g.begin(), g.end());
    const double n = static_cast<double>(pooled.size());

    double h = 0.0;
    for (const auto& g : groups) {
        double sum = 0.0;
        for (double v : g)
            sum += oracle_midrank(pooled, v);
        const double dev = sum / static_cast<double>(g.size()) - (n + 1.0) / 2.0;
        h += static_cast<double>(g.size()) * dev * dev;
    }
    h *= 12.0 / (n * (n + 1.0));

    std::vector<double> uniq = pooled;
    std::sort(uniq.begin(), uniq.end());
    double ties = 0.0;
    for (std::size_t i = 0; i < uniq.size();) {
        std::size_t j = i;
        while (j + 1 < uniq.size() && uniq[j + 1] == uniq[i])
            ++j;
        const double t = static_cast<double>(j - i + 1);
        ties += t * t * t - t;
        i = j + 1;
    }
    h /= 1.0 - ties / (n * n * n - n);

    OracleKW out;
    out.h = h;
    if (groups.size() == 3)
        out.p = std::exp(-h / 2.0); // chi-square upper tail at df = 2
    return out;
}

} // namespace testutil
