#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "exmean/projective.hpp"
#include "exmean/types.hpp"

namespace exmean {

/// Axis-aligned plotting window in data coordinates plus the pixel size
/// of the emitted image. The contour grid resolution is fixed at 512x512
/// cells so identical inputs give identical output bytes.
struct Viewport {
    double xmin, xmax, ymin, ymax;
    int width = 512;
    int height = 512;
};

struct ContourSegment {
    double x0, y0, x1, y1;  // data coordinates
};

/// Marching-squares contour of the quadric boundary x~^T Q x~ = 0 over
/// the viewport. Zero crossings are placed by linear interpolation;
/// saddle cells are disambiguated by the cell-center sign.
inline std::vector<ContourSegment> contour_segments(const QuadricRegion& region,
                                                    const Viewport& vp,
                                                    int cells = 512) {
    if (region.m != 2)
        throw std::invalid_argument("contour_segments: quadric must be planar (m = 2)");
    if (cells < 2) throw std::invalid_argument("contour_segments: grid too coarse");

    auto value = [&](double x, double y) {
        RealVector p(2);
        p << x, y;
        return quadric_value(region, p);
    };

    const double dx = (vp.xmax - vp.xmin) / cells;
    const double dy = (vp.ymax - vp.ymin) / cells;

    // Corner samples, row-major.
    std::vector<double> grid(static_cast<std::size_t>(cells + 1) * (cells + 1));
    for (int j = 0; j <= cells; ++j)
        for (int i = 0; i <= cells; ++i)
            grid[static_cast<std::size_t>(j) * (cells + 1) + i] =
                value(vp.xmin + i * dx, vp.ymin + j * dy);

    auto lerp = [](double a, double b, double fa, double fb) {
        const double t = fa / (fa - fb);  // fa, fb have opposite signs
        return a + t * (b - a);
    };

    std::vector<ContourSegment> segments;
    for (int j = 0; j < cells; ++j) {
        for (int i = 0; i < cells; ++i) {
            const double x0 = vp.xmin + i * dx, x1 = x0 + dx;
            const double y0 = vp.ymin + j * dy, y1 = y0 + dy;
            const double f00 = grid[static_cast<std::size_t>(j) * (cells + 1) + i];
            const double f10 = grid[static_cast<std::size_t>(j) * (cells + 1) + i + 1];
            const double f01 = grid[static_cast<std::size_t>(j + 1) * (cells + 1) + i];
            const double f11 = grid[static_cast<std::size_t>(j + 1) * (cells + 1) + i + 1];

            int mask = 0;
            if (f00 > 0.0) mask |= 1;
            if (f10 > 0.0) mask |= 2;
            if (f11 > 0.0) mask |= 4;
            if (f01 > 0.0) mask |= 8;
            if (mask == 0 || mask == 15) continue;

            // Edge crossings: bottom (00-10), right (10-11), top (01-11), left (00-01).
            double bx = 0, rx = 0, tx = 0, lx = 0, by = 0, ry = 0, ty = 0, ly = 0;
            const bool bottom = (f00 > 0.0) != (f10 > 0.0);
            const bool right = (f10 > 0.0) != (f11 > 0.0);
            const bool top = (f01 > 0.0) != (f11 > 0.0);
            const bool left = (f00 > 0.0) != (f01 > 0.0);
            if (bottom) { bx = lerp(x0, x1, f00, f10); by = y0; }
            if (right) { rx = x1; ry = lerp(y0, y1, f10, f11); }
            if (top) { tx = lerp(x0, x1, f01, f11); ty = y1; }
            if (left) { lx = x0; ly = lerp(y0, y1, f00, f01); }

            auto emit = [&](double ax, double ay, double cx, double cy) {
                segments.push_back(ContourSegment{ax, ay, cx, cy});
            };

            switch (mask) {
                case 1: case 14: emit(lx, ly, bx, by); break;
                case 2: case 13: emit(bx, by, rx, ry); break;
                case 3: case 12: emit(lx, ly, rx, ry); break;
                case 4: case 11: emit(rx, ry, tx, ty); break;
                case 6: case 9: emit(bx, by, tx, ty); break;
                case 7: case 8: emit(lx, ly, tx, ty); break;
                case 5: case 10: {
                    const double center = value(0.5 * (x0 + x1), 0.5 * (y0 + y1));
                    const bool center_in = center > 0.0;
                    if ((mask == 5) == center_in) {
                        emit(lx, ly, tx, ty);
                        emit(bx, by, rx, ry);
                    } else {
                        emit(lx, ly, bx, by);
                        emit(rx, ry, tx, ty);
                    }
                    break;
                }
                default: break;
            }
        }
    }
    return segments;
}

namespace detail {

inline std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

/// Deterministic SVG 1.1 figure: quadric boundary (marching-squares
/// contour on a 512x512 grid), data points, and the dehomogenized mean
/// marked with a cross.
inline std::string render_region_svg(const QuadricRegion& region,
                                     const std::vector<RealVector>& data,
                                     const Viewport& vp) {
    if (region.m != 2)
        throw std::invalid_argument("render_region_svg: only planar regions (m = 2)");

    const double sx = vp.width / (vp.xmax - vp.xmin);
    const double sy = vp.height / (vp.ymax - vp.ymin);
    auto px = [&](double x) { return (x - vp.xmin) * sx; };
    auto py = [&](double y) { return (vp.ymax - y) * sy; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(vp.width) + "\" height=\"" + std::to_string(vp.height) +
           "\" viewBox=\"0 0 " + std::to_string(vp.width) + " " +
           std::to_string(vp.height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(vp.width) + "\" height=\"" +
           std::to_string(vp.height) + "\" fill=\"white\" stroke=\"black\"/>\n";

    const auto segments = contour_segments(region, vp);
    if (!segments.empty()) {
        svg += "<path fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" d=\"";
        for (const auto& s : segments) {
            svg += "M" + detail::fixed(px(s.x0)) + " " + detail::fixed(py(s.y0)) + "L" +
                   detail::fixed(px(s.x1)) + " " + detail::fixed(py(s.y1));
        }
        svg += "\"/>\n";
    }

    if (!data.empty()) {
        svg += "<g fill=\"#d62728\">\n";
        for (const auto& p : data) {
            if (p.size() != 2)
                throw std::invalid_argument("render_region_svg: data points must be planar");
            svg += "<circle cx=\"" + detail::fixed(px(p[0])) + "\" cy=\"" +
                   detail::fixed(py(p[1])) + "\" r=\"2\"/>\n";
        }
        svg += "</g>\n";
    }

    const double cx = px(region.z[0]), cy = py(region.z[1]);
    svg += "<path stroke=\"black\" stroke-width=\"1.5\" d=\"M" +
           detail::fixed(cx - 5) + " " + detail::fixed(cy) + "L" + detail::fixed(cx + 5) +
           " " + detail::fixed(cy) + "M" + detail::fixed(cx) + " " +
           detail::fixed(cy - 5) + "L" + detail::fixed(cx) + " " + detail::fixed(cy + 5) +
           "\"/>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace exmean
