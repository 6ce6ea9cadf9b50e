#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "landscape/critical_points.hpp"
#include "landscape/grid.hpp"

namespace landscape {

struct ComponentCensus {
    int component_id = 0;
    int maxima = 0;
    int saddles = 0;
    int degenerate = 0;
    int connectivity = 1;    // 1 + number of enclosed holes
    bool morse_ok = false;   // saddles - maxima == connectivity - 2
};

struct TopologyCensus {
    std::vector<ComponentCensus> components;
    int global_maxima = 0;
    int global_saddles = 0;
    int global_degenerate = 0;
    int global_k_sum = 0;
    int exterior_components = 0; // 1 unbounded + all holes
    bool all_nondegenerate() const { return global_degenerate == 0; }
    bool morse_all_ok() const {
        for (const auto& c : components)
            if (!c.morse_ok) return false;
        return !components.empty();
    }
};

namespace detail {

// Flood fill labels; 4-connectivity for the interior, 8 for the exterior
// (the Jordan-consistent pairing that stops diagonal leaks).
inline std::vector<int> label_components(const GridField& f, bool interior) {
    std::vector<int> label(f.values.size(), -1);
    std::vector<size_t> stack;
    int next = 0;
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            size_t s = f.idx(i, j);
            bool is_set = (f.mask[s] == Cell::Interior) == interior;
            if (!is_set || label[s] != -1) continue;
            label[s] = next;
            stack.push_back(s);
            while (!stack.empty()) {
                size_t cur = stack.back();
                stack.pop_back();
                int ci = int(cur % f.nx), cj = int(cur / f.nx);
                auto visit = [&](int ni, int nj) {
                    if (!f.in_range(ni, nj)) return;
                    size_t ns = f.idx(ni, nj);
                    bool nset = (f.mask[ns] == Cell::Interior) == interior;
                    if (nset && label[ns] == -1) {
                        label[ns] = next;
                        stack.push_back(ns);
                    }
                };
                visit(ci - 1, cj);
                visit(ci + 1, cj);
                visit(ci, cj - 1);
                visit(ci, cj + 1);
                if (!interior) {
                    visit(ci - 1, cj - 1);
                    visit(ci + 1, cj - 1);
                    visit(ci - 1, cj + 1);
                    visit(ci + 1, cj + 1);
                }
            }
            ++next;
        }
    return label;
}

} // namespace detail

/// Component/connectivity census of {v > 0} with critical points assigned
/// to components by cell. Holes are bounded exterior components; each must
/// be enclosed by a single interior component, otherwise the grid is too
/// coarse to resolve the topology.
inline TopologyCensus census(const GridField& f, const std::vector<CriticalPoint>& points) {
    TopologyCensus out;
    std::vector<int> ilabel = detail::label_components(f, true);
    std::vector<int> elabel = detail::label_components(f, false);

    int n_int = 0, n_ext = 0;
    for (int v : ilabel) n_int = std::max(n_int, v + 1);
    for (int v : elabel) n_ext = std::max(n_ext, v + 1);
    out.exterior_components = n_ext;

    // Exterior components touching the array border are unbounded.
    std::vector<bool> unbounded(n_ext, false);
    for (int i = 0; i < f.nx; ++i) {
        for (int j : {0, f.ny - 1}) {
            int e = elabel[f.idx(i, j)];
            if (e >= 0) unbounded[e] = true;
        }
    }
    for (int j = 0; j < f.ny; ++j) {
        for (int i : {0, f.nx - 1}) {
            int e = elabel[f.idx(i, j)];
            if (e >= 0) unbounded[e] = true;
        }
    }

    // Assign each hole to the unique interior component around it.
    std::vector<int> hole_owner(n_ext, -1);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            int e = elabel[f.idx(i, j)];
            if (e < 0 || unbounded[e]) continue;
            auto check = [&](int ni, int nj) {
                if (!f.in_range(ni, nj)) return;
                int il = ilabel[f.idx(ni, nj)];
                if (il < 0) return;
                if (hole_owner[e] == -1) hole_owner[e] = il;
                else if (hole_owner[e] != il)
                    throw UnresolvedTopology(
                        "hole touches two interior components; refine the grid");
            };
            check(i - 1, j);
            check(i + 1, j);
            check(i, j - 1);
            check(i, j + 1);
        }

    out.components.resize(size_t(n_int));
    for (int c = 0; c < n_int; ++c) out.components[size_t(c)].component_id = c;
    for (int e = 0; e < n_ext; ++e)
        if (!unbounded[e] && hole_owner[e] >= 0)
            out.components[size_t(hole_owner[e])].connectivity++;

    for (const auto& p : points) {
        auto [i, j] = f.nearest(p.location);
        int il = ilabel[f.idx(i, j)];
        if (il < 0) {
            // mask staircase jitter: look one node around
            for (int dj = -1; dj <= 1 && il < 0; ++dj)
                for (int di = -1; di <= 1 && il < 0; ++di)
                    if (f.in_range(i + di, j + dj)) il = ilabel[f.idx(i + di, j + dj)];
        }
        if (il < 0)
            throw BadParameters("census: critical point does not lie in an interior cell");
        auto& comp = out.components[size_t(il)];
        switch (p.cls) {
            case PointClass::Maximum: comp.maxima++; out.global_maxima++; break;
            case PointClass::Saddle: comp.saddles++; out.global_saddles++; break;
            default: comp.degenerate++; out.global_degenerate++; break;
        }
    }

    for (auto& c : out.components) {
        out.global_k_sum += c.connectivity;
        c.morse_ok = (c.degenerate == 0) && (c.saddles - c.maxima == c.connectivity - 2);
    }
    return out;
}

/// Same census restricted to components that actually carry critical points
/// (the sampling box may clip stray slivers of {v > 0} that hold none).
inline TopologyCensus census_nonempty(const GridField& f,
                                      const std::vector<CriticalPoint>& points) {
    TopologyCensus full = census(f, points);
    TopologyCensus out;
    out.exterior_components = full.exterior_components;
    for (const auto& c : full.components) {
        if (c.maxima + c.saddles + c.degenerate == 0) continue;
        out.components.push_back(c);
        out.global_maxima += c.maxima;
        out.global_saddles += c.saddles;
        out.global_degenerate += c.degenerate;
        out.global_k_sum += c.connectivity;
    }
    return out;
}

} // namespace landscape
