#include "setderiv/grid.hpp"

#include <cstring>
#include <fstream>

#include "setderiv/errors.hpp"
#include "setderiv/parallel.hpp"

namespace setderiv {

size_t GridSet::count_occupied() const {
    size_t n = 0;
    for (uint8_t v : occ) n += v;
    return n;
}

namespace {

// Snap to the global lattice so that multiples of h are cell boundaries.
double snap_down(double v, double h) { return std::floor(v / h) * h; }
double snap_up(double v, double h) { return std::ceil(v / h) * h; }

}  // namespace

GridSet build_grid_set_on(const ShapePtr& shape, double h, double margin, const BBox& box) {
    if (h <= 0) fail(ErrorCode::Other, "grid spacing must be positive");
    if (margin < 2 * h) fail(ErrorCode::MarginTooSmall, "margin must be at least 2h");

    GridSet gs;
    gs.h = h;
    gs.margin = margin;
    gs.shape = shape;
    gs.bbox.lo = {snap_down(box.lo.x, h), snap_down(box.lo.y, h)};
    Vec2 hi = {snap_up(box.hi.x, h), snap_up(box.hi.y, h)};
    gs.nx = (int)std::llround((hi.x - gs.bbox.lo.x) / h);
    gs.ny = (int)std::llround((hi.y - gs.bbox.lo.y) / h);
    gs.bbox.hi = {gs.bbox.lo.x + gs.nx * h, gs.bbox.lo.y + gs.ny * h};
    gs.mode = shape->is_curve() ? GridMode::boundary : GridMode::solid;
    gs.occ.assign((size_t)gs.nx * gs.ny, 0);

    const Shape& s = *shape;
    if (gs.mode == GridMode::solid) {
        parallel_for(0, gs.ny, [&](int y0, int y1) {
            for (int iy = y0; iy < y1; ++iy)
                for (int ix = 0; ix < gs.nx; ++ix)
                    if (s.contains(gs.center(ix, iy))) gs.occ[gs.idx(ix, iy)] = 1;
        });
    } else {
        // Thin chain: occupied iff the center is within h/2 of the curve.
        const double r = h * 0.5 * (1 + 1e-12);
        parallel_for(0, gs.ny, [&](int y0, int y1) {
            for (int iy = y0; iy < y1; ++iy)
                for (int ix = 0; ix < gs.nx; ++ix)
                    if (s.signed_distance(gs.center(ix, iy)) <= r) gs.occ[gs.idx(ix, iy)] = 1;
        });
    }

    check_invariants(gs);
    return gs;
}

GridSet build_grid_set(const ShapePtr& shape, double h, double margin) {
    BBox b = shape->bbox().padded(margin);
    return build_grid_set_on(shape, h, margin, b);
}

void check_invariants(const GridSet& gs) {
    size_t n = gs.count_occupied();
    if (n == 0) fail(ErrorCode::EmptySet, "no cell occupied at h=" + std::to_string(gs.h));

    // Margin band must be clear.
    int m = (int)std::ceil(gs.margin / gs.h);
    for (int iy = 0; iy < gs.ny; ++iy)
        for (int ix = 0; ix < gs.nx; ++ix) {
            bool border = ix < m || iy < m || ix >= gs.nx - m || iy >= gs.ny - m;
            if (border && gs.occupied(ix, iy))
                fail(ErrorCode::MarginTooSmall, "occupied cell inside the margin band");
        }

    if (gs.mode == GridMode::solid) {
        // No isolated cells, except the single-cell degenerate case.
        if (n == 1) {
            const_cast<GridSet&>(gs).degenerate = true;
            return;
        }
        for (int iy = 0; iy < gs.ny; ++iy)
            for (int ix = 0; ix < gs.nx; ++ix) {
                if (!gs.occupied(ix, iy)) continue;
                if (!gs.occupied(ix - 1, iy) && !gs.occupied(ix + 1, iy) &&
                    !gs.occupied(ix, iy - 1) && !gs.occupied(ix, iy + 1))
                    fail(ErrorCode::ModeViolation, "isolated occupied cell in solid mode");
            }
    } else {
        // Empty grid interior: every occupied cell touches the complement.
        for (int iy = 0; iy < gs.ny; ++iy)
            for (int ix = 0; ix < gs.nx; ++ix) {
                if (!gs.occupied(ix, iy)) continue;
                if (gs.occupied(ix - 1, iy) && gs.occupied(ix + 1, iy) &&
                    gs.occupied(ix, iy - 1) && gs.occupied(ix, iy + 1))
                    fail(ErrorCode::ModeViolation, "boundary-mode set has grid interior");
            }
    }
}

GridSet complement_closure(const GridSet& gs) {
    if (gs.mode != GridMode::solid)
        fail(ErrorCode::ModeViolation, "complement closure needs a solid set");
    GridSet out = gs;
    out.shape = nullptr;
    out.degenerate = false;
    for (int iy = 0; iy < gs.ny; ++iy)
        for (int ix = 0; ix < gs.nx; ++ix) {
            bool inside = gs.occupied(ix, iy);
            bool keep = !inside;
            if (inside) {
                // Boundary layer: occupied cells 4-adjacent to the complement.
                keep = !gs.occupied(ix - 1, iy) || !gs.occupied(ix + 1, iy) ||
                       !gs.occupied(ix, iy - 1) || !gs.occupied(ix, iy + 1);
            }
            out.occ[out.idx(ix, iy)] = keep ? 1 : 0;
        }
    // A full-interior F collapses F* to the frame.
    size_t n = out.count_occupied();
    if (n == 0) fail(ErrorCode::EmptySet, "complement closure is empty");
    out.degenerate = n < 4;
    return out;
}

// ------------------------------------------------------------------ file I/O

namespace {

template <typename T>
void put(std::ofstream& f, T v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& f) {
    T v;
    f.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

}  // namespace

void save_sdgs(const GridSet& gs, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::Other, "cannot open for writing: " + path);
    f.write("SDGS", 4);
    put<uint16_t>(f, 1);  // version
    put<uint32_t>(f, (uint32_t)gs.nx);
    put<uint32_t>(f, (uint32_t)gs.ny);
    put<uint8_t>(f, (uint8_t)gs.mode);
    put<uint8_t>(f, 0);  // pad to 16 bytes
    size_t nbits = (size_t)gs.nx * gs.ny;
    std::vector<uint8_t> packed((nbits + 7) / 8, 0);
    for (size_t i = 0; i < nbits; ++i)
        if (gs.occ[i]) packed[i >> 3] |= (uint8_t)(1u << (i & 7));
    f.write(reinterpret_cast<const char*>(packed.data()), (std::streamsize)packed.size());
    put<double>(f, gs.bbox.lo.x);
    put<double>(f, gs.bbox.lo.y);
    put<double>(f, gs.bbox.hi.x);
    put<double>(f, gs.bbox.hi.y);
    put<double>(f, gs.h);
}

GridSet load_sdgs(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::Other, "cannot open: " + path);
    char magic[4];
    f.read(magic, 4);
    if (std::memcmp(magic, "SDGS", 4) != 0) fail(ErrorCode::ConfigParse, "bad magic in " + path);
    uint16_t version = get<uint16_t>(f);
    if (version != 1) fail(ErrorCode::ConfigParse, "unsupported bitmap version");
    GridSet gs;
    gs.nx = (int)get<uint32_t>(f);
    gs.ny = (int)get<uint32_t>(f);
    gs.mode = (GridMode)get<uint8_t>(f);
    get<uint8_t>(f);  // pad
    size_t nbits = (size_t)gs.nx * gs.ny;
    std::vector<uint8_t> packed((nbits + 7) / 8);
    f.read(reinterpret_cast<char*>(packed.data()), (std::streamsize)packed.size());
    gs.occ.assign(nbits, 0);
    for (size_t i = 0; i < nbits; ++i)
        gs.occ[i] = (packed[i >> 3] >> (i & 7)) & 1u;
    gs.bbox.lo.x = get<double>(f);
    gs.bbox.lo.y = get<double>(f);
    gs.bbox.hi.x = get<double>(f);
    gs.bbox.hi.y = get<double>(f);
    gs.h = get<double>(f);
    if (!f) fail(ErrorCode::ConfigParse, "truncated bitmap file " + path);
    return gs;
}

}  // namespace setderiv
