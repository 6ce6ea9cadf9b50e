#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "landscape/rl_potential.hpp"

namespace landscape {

struct Box {
    double xmin, xmax, ymin, ymax;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

enum class Cell : std::uint8_t { Exterior = 0, Interior = 1, Boundary = 2 };

/// Rectangular node-registered sample of a scalar field with an
/// inside/outside mask. values[j*nx+i] sits at (xmin + i*h, ymin + j*h).
struct GridField {
    Box box{};
    double h = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> values;
    std::vector<Cell> mask;
    int pole_cells_marked = 0; // diagnostics from sampling near log nodes

    size_t idx(int i, int j) const { return size_t(j) * nx + i; }
    double value(int i, int j) const { return values[idx(i, j)]; }
    Cell cell(int i, int j) const { return mask[idx(i, j)]; }
    cplx point(int i, int j) const { return {box.xmin + i * h, box.ymin + j * h}; }
    bool in_range(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }

    // Nearest node indices for a point inside the box.
    std::pair<int, int> nearest(cplx z) const {
        int i = int(std::lround((z.real() - box.xmin) / h));
        int j = int(std::lround((z.imag() - box.ymin) / h));
        i = std::max(0, std::min(nx - 1, i));
        j = std::max(0, std::min(ny - 1, j));
        return {i, j};
    }
};

/// Box certified to contain {v > 0}: the node bounding box inflated by 2,
/// widened to the provable outer radius, then doubled until v < 0 along the
/// whole border ring (4096 samples). Terminates because v -> -inf.
inline Box auto_box(const RLPotential& p, int border_samples = 4096) {
    auto nodes = p.nodes();
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (cplx a : nodes) {
        if (first || a.real() < xmin) xmin = a.real();
        if (first || a.real() > xmax) xmax = a.real();
        if (first || a.imag() < ymin) ymin = a.imag();
        if (first || a.imag() > ymax) ymax = a.imag();
        first = false;
    }
    double R = p.outer_radius();
    Box b{std::min(xmin - 2.0, -R), std::max(xmax + 2.0, R), std::min(ymin - 2.0, -R),
          std::max(ymax + 2.0, R)};

    auto border_negative = [&](const Box& bb) {
        const int per_side = border_samples / 4;
        for (int k = 0; k <= per_side; ++k) {
            double tx = bb.xmin + bb.width() * k / per_side;
            double ty = bb.ymin + bb.height() * k / per_side;
            for (cplx z : {cplx(tx, bb.ymin), cplx(tx, bb.ymax), cplx(bb.xmin, ty), cplx(bb.xmax, ty)}) {
                double v;
                try {
                    v = p.eval_v(z);
                } catch (const PoleProximity&) {
                    continue;
                }
                if (v >= 0.0) return false;
            }
        }
        return true;
    };

    for (int rounds = 0; rounds < 48; ++rounds) {
        if (border_negative(b)) return b;
        double cx = 0.5 * (b.xmin + b.xmax), cy = 0.5 * (b.ymin + b.ymax);
        b = Box{cx - b.width(), cx + b.width(), cy - b.height(), cy + b.height()};
    }
    throw NonConvergence("auto_box: level set does not close after 48 doublings");
}

/// Samples v on a grid of grid_n nodes along the longer side; mask by sign.
/// Nodes within one spacing of a pole node are marked Exterior (v tends to
/// -inf there, and the sub-cell negative neighborhood may be far thinner
/// than h); the count is reported in pole_cells_marked.
inline GridField sample_sign_grid(const RLPotential& p, const Box& box, int grid_n) {
    if (grid_n < 64) throw BadParameters("sample_sign_grid: grid_n >= 64 required");
    GridField f;
    f.box = box;
    f.h = std::max(box.width(), box.height()) / (grid_n - 1);
    f.nx = int(std::lround(box.width() / f.h)) + 1;
    f.ny = int(std::lround(box.height() / f.h)) + 1;
    f.values.resize(size_t(f.nx) * f.ny, 0.0);
    f.mask.resize(size_t(f.nx) * f.ny, Cell::Exterior);

    // nodes whose every neighborhood contains exterior points: v -> -inf at
    // positive simple-pole weights, and sign-indefinite at higher-order poles
    std::vector<cplx> sink_nodes;
    for (const auto& t : p.fprime().poles())
        if (t.order() >= 2 || t.coeffs[0].real() > 0.0) sink_nodes.push_back(t.node);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            cplx z = f.point(i, j);
            bool near_pole = false;
            for (cplx a : sink_nodes)
                if (std::abs(z - a) <= f.h) { near_pole = true; break; }
            double v;
            try {
                v = p.eval_v(z);
            } catch (const PoleProximity&) {
                near_pole = true;
                v = -1.0;
            }
            f.values[f.idx(i, j)] = v;
            if (near_pole) {
                f.mask[f.idx(i, j)] = Cell::Exterior;
                f.pole_cells_marked++;
            } else {
                f.mask[f.idx(i, j)] = v > 0.0 ? Cell::Interior : Cell::Exterior;
            }
        }
    return f;
}

/// Generic sampler for closed-form fields (ovals, mapped disks).
inline GridField sample_field(const std::function<double(cplx)>& v, const Box& box, int grid_n) {
    GridField f;
    f.box = box;
    f.h = std::max(box.width(), box.height()) / (grid_n - 1);
    f.nx = int(std::lround(box.width() / f.h)) + 1;
    f.ny = int(std::lround(box.height() / f.h)) + 1;
    f.values.resize(size_t(f.nx) * f.ny, 0.0);
    f.mask.resize(size_t(f.nx) * f.ny, Cell::Exterior);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            double val = v(f.point(i, j));
            f.values[f.idx(i, j)] = val;
            f.mask[f.idx(i, j)] = val > 0.0 ? Cell::Interior : Cell::Exterior;
        }
    return f;
}

} // namespace landscape
