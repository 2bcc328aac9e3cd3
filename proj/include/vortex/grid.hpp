#pragma once

#include "vortex/rational.hpp"

#include <vector>

namespace vortex {

/// Uniform periodic grid on the flat torus [0,Lx) x [0,Ly).
struct TorusGrid {
    double lx = 0, ly = 0;
    int nx = 0, ny = 0;

    TorusGrid() = default;
    TorusGrid(double lx_, double ly_, int nx_, int ny_) : lx(lx_), ly(ly_), nx(nx_), ny(ny_) {
        if (!(lx > 0) || !(ly > 0)) throw InvalidInput("torus side lengths must be positive");
        if (nx < 16 || ny < 16) throw InvalidInput("grid must be at least 16x16");
        if (nx % 2 != 0 || ny % 2 != 0) throw InvalidInput("node counts must be even");
    }

    double hx() const { return lx / nx; }
    double hy() const { return ly / ny; }
    double cell() const { return hx() * hy(); }
    double volume() const { return lx * ly; }
    int size() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
    int wrap_x(int i) const { return ((i % nx) + nx) % nx; }
    int wrap_y(int j) const { return ((j % ny) + ny) % ny; }
    double x(int i) const { return i * hx(); }
    double y(int j) const { return j * hy(); }

    /// Shortest periodic displacement and distance between nodes.
    double node_distance(int i0, int j0, int i1, int j1) const {
        double dx = std::abs(x(i0) - x(i1));
        double dy = std::abs(y(j0) - y(j1));
        dx = std::min(dx, lx - dx);
        dy = std::min(dy, ly - dy);
        return std::sqrt(dx * dx + dy * dy);
    }
};

/// Point vortex/antivortex snapped to a grid node.
struct PointSource {
    int i = 0, j = 0;
    Int multiplicity = 1;
};

/// Snaps a physical position to the nearest node (periodic).
PointSource snap_source(const TorusGrid& grid, double x, double y, Int multiplicity);

}  // namespace vortex
