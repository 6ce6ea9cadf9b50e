#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "landscape/critical_points.hpp"
#include "landscape/grid.hpp"

namespace landscape {

namespace detail {

struct Segment {
    double x0, y0, x1, y1;
};

// Marching squares on the node lattice: one or two segments per cell,
// endpoints by linear interpolation along cell edges.
inline std::vector<Segment> marching_squares(const GridField& f, double level,
                                             bool interior_only) {
    std::vector<Segment> segs;
    auto interp = [&](double va, double vb, double a, double b) {
        double t = (level - va) / (vb - va);
        return a + t * (b - a);
    };
    for (int j = 0; j + 1 < f.ny; ++j)
        for (int i = 0; i + 1 < f.nx; ++i) {
            if (interior_only) {
                bool any_ext = false;
                for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}})
                    if (f.cell(i + di, j + dj) == Cell::Exterior) any_ext = true;
                if (any_ext) continue;
            }
            double v00 = f.value(i, j), v10 = f.value(i + 1, j);
            double v01 = f.value(i, j + 1), v11 = f.value(i + 1, j + 1);
            int code = (v00 > level ? 1 : 0) | (v10 > level ? 2 : 0) | (v11 > level ? 4 : 0) |
                       (v01 > level ? 8 : 0);
            if (code == 0 || code == 15) continue;
            double x0 = f.box.xmin + i * f.h, y0 = f.box.ymin + j * f.h;
            double x1 = x0 + f.h, y1 = y0 + f.h;
            // edge crossing points: bottom, right, top, left
            double bx = interp(v00, v10, x0, x1), by = y0;
            double rx = x1, ry = interp(v10, v11, y0, y1);
            double tx = interp(v01, v11, x0, x1), ty = y1;
            double lx = x0, ly = interp(v00, v01, y0, y1);
            auto add = [&](double ax, double ay, double cx, double cy) {
                segs.push_back({ax, ay, cx, cy});
            };
            switch (code) {
                case 1: case 14: add(lx, ly, bx, by); break;
                case 2: case 13: add(bx, by, rx, ry); break;
                case 3: case 12: add(lx, ly, rx, ry); break;
                case 4: case 11: add(rx, ry, tx, ty); break;
                case 6: case 9: add(bx, by, tx, ty); break;
                case 7: case 8: add(lx, ly, tx, ty); break;
                case 5: // saddle cell: resolve by cell-center average
                    if (0.25 * (v00 + v10 + v01 + v11) > level) {
                        add(lx, ly, bx, by);
                        add(rx, ry, tx, ty);
                    } else {
                        add(lx, ly, tx, ty);
                        add(bx, by, rx, ry);
                    }
                    break;
                case 10:
                    if (0.25 * (v00 + v10 + v01 + v11) > level) {
                        add(bx, by, rx, ry);
                        add(lx, ly, tx, ty);
                    } else {
                        add(lx, ly, bx, by);
                        add(rx, ry, tx, ty);
                    }
                    break;
                default: break;
            }
        }
    return segs;
}

// Chain segments into polylines by matching quantized endpoints. Input
// order is preserved as the tie-breaker, so output is deterministic.
inline std::vector<std::vector<std::pair<double, double>>> chain_segments(
    const std::vector<Segment>& segs, double quantum) {
    auto key = [quantum](double x, double y) {
        return std::pair<long long, long long>(llround(x / quantum), llround(y / quantum));
    };
    std::map<std::pair<long long, long long>, std::vector<size_t>> at;
    for (size_t s = 0; s < segs.size(); ++s) {
        at[key(segs[s].x0, segs[s].y0)].push_back(s);
        at[key(segs[s].x1, segs[s].y1)].push_back(s);
    }
    std::vector<char> used(segs.size(), 0);
    std::vector<std::vector<std::pair<double, double>>> lines;
    for (size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (used[s0]) continue;
        used[s0] = 1;
        std::vector<std::pair<double, double>> line{{segs[s0].x0, segs[s0].y0},
                                                    {segs[s0].x1, segs[s0].y1}};
        // extend forward from the tail, then backward from the head
        for (int dir = 0; dir < 2; ++dir) {
            for (;;) {
                auto [tx, ty] = dir == 0 ? line.back() : line.front();
                auto it = at.find(key(tx, ty));
                if (it == at.end()) break;
                size_t next = size_t(-1);
                for (size_t cand : it->second)
                    if (!used[cand]) { next = cand; break; }
                if (next == size_t(-1)) break;
                used[next] = 1;
                const Segment& sg = segs[next];
                bool tail_is_0 =
                    std::llround(sg.x0 / quantum) == std::llround(tx / quantum) &&
                    std::llround(sg.y0 / quantum) == std::llround(ty / quantum);
                std::pair<double, double> add =
                    tail_is_0 ? std::pair{sg.x1, sg.y1} : std::pair{sg.x0, sg.y0};
                if (dir == 0) line.push_back(add);
                else line.insert(line.begin(), add);
            }
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

} // namespace detail

/// Standalone SVG with marching-squares contours at the given levels (the
/// zero level drawn bold: the domain boundary), filled dots at maxima and
/// crosses at saddles. Output bytes are deterministic for fixed inputs.
inline void render_svg(const GridField& f, const std::vector<CriticalPoint>& points,
                       std::vector<double> levels, const std::string& path,
                       bool interior_only = false) {
    const double W = 800.0;
    const double Hpx = W * f.box.height() / f.box.width();
    auto px = [&](double x) { return (x - f.box.xmin) / f.box.width() * W; };
    auto py = [&](double y) { return Hpx - (y - f.box.ymin) / f.box.height() * Hpx; };

    if (levels.empty()) {
        double vmax = 0.0;
        for (double v : f.values) vmax = std::max(vmax, v);
        for (int k = 0; k < 12; ++k) levels.push_back(vmax * k / 12.0);
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write SVG: " + path);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  W, Hpx, W, Hpx);
    out << buf;
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (double level : levels) {
        bool zero = std::abs(level) < 1e-14;
        auto segs = detail::marching_squares(f, level, interior_only);
        auto lines = detail::chain_segments(segs, 0.25 * f.h * 1e-3);
        std::snprintf(buf, sizeof buf,
                      "<g fill=\"none\" stroke=\"%s\" stroke-width=\"%.1f\">\n",
                      zero ? "black" : "#7a7a7a", zero ? 2.5 : 1.0);
        out << buf;
        for (const auto& line : lines) {
            out << "<path d=\"";
            for (size_t k = 0; k < line.size(); ++k) {
                std::snprintf(buf, sizeof buf, "%s%.2f %.2f", k == 0 ? "M" : " L",
                              px(line[k].first), py(line[k].second));
                out << buf;
            }
            out << "\"/>\n";
        }
        out << "</g>\n";
    }

    for (const auto& p : points) {
        double cx = px(p.location.real()), cy = py(p.location.imag());
        if (p.cls == PointClass::Maximum) {
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"black\"/>\n",
                          cx, cy);
            out << buf;
        } else if (p.cls == PointClass::Saddle) {
            std::snprintf(buf, sizeof buf,
                          "<path d=\"M%.2f %.2f L%.2f %.2f M%.2f %.2f L%.2f %.2f\" "
                          "stroke=\"black\" stroke-width=\"1.5\"/>\n",
                          cx - 4, cy - 4, cx + 4, cy + 4, cx - 4, cy + 4, cx + 4, cy - 4);
            out << buf;
        } else {
            std::snprintf(buf, sizeof buf,
                          "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"5\" fill=\"none\" stroke=\"black\"/>\n",
                          cx, cy);
            out << buf;
        }
    }
    out << "</svg>\n";
    if (!out) throw IoError("failed writing SVG: " + path);
}

} // namespace landscape
