#include "setderiv/shapes.hpp"

#include <cmath>
#include <cstdio>

#include "setderiv/errors.hpp"

namespace setderiv {

std::vector<CurveSegment> Shape::curve_segments(double) const {
    fail(ErrorCode::UnsupportedSet, "shape has no curve representation: " + describe());
}

namespace {

std::vector<CurveSegment> chop(const Vec2& a, const Vec2& b, double max_len) {
    std::vector<CurveSegment> out;
    double len = dist(a, b);
    int n = std::max(1, (int)std::ceil(len / max_len));
    for (int i = 0; i < n; ++i) {
        double t0 = (double)i / n, t1 = (double)(i + 1) / n;
        out.push_back({a + (b - a) * t0, a + (b - a) * t1});
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------- DiskShape

DiskShape::DiskShape(Vec2 center, double radius) : center_(center), radius_(radius) {
    if (radius <= 0) fail(ErrorCode::EmptySet, "disk radius must be positive");
}

bool DiskShape::contains(const Vec2& p) const { return dist(p, center_) <= radius_; }
double DiskShape::signed_distance(const Vec2& p) const { return dist(p, center_) - radius_; }
BBox DiskShape::bbox() const {
    return {{center_.x - radius_, center_.y - radius_}, {center_.x + radius_, center_.y + radius_}};
}
std::string DiskShape::describe() const {
    return "disk(c=(" + fmt(center_.x) + "," + fmt(center_.y) + "),R=" + fmt(radius_) + ")";
}

// ---------------------------------------------------------------- RectShape

RectShape::RectShape(Vec2 lo, Vec2 hi) : lo_(lo), hi_(hi) {
    if (!(hi.x > lo.x && hi.y > lo.y)) fail(ErrorCode::EmptySet, "rect must have positive area");
}

bool RectShape::contains(const Vec2& p) const {
    return p.x >= lo_.x && p.x <= hi_.x && p.y >= lo_.y && p.y <= hi_.y;
}

double RectShape::signed_distance(const Vec2& p) const {
    double dx = std::max(lo_.x - p.x, p.x - hi_.x);
    double dy = std::max(lo_.y - p.y, p.y - hi_.y);
    if (dx <= 0 && dy <= 0) return std::max(dx, dy);
    return std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
}

BBox RectShape::bbox() const { return {lo_, hi_}; }
std::string RectShape::describe() const {
    return "rect([" + fmt(lo_.x) + "," + fmt(hi_.x) + "]x[" + fmt(lo_.y) + "," + fmt(hi_.y) + "])";
}

// ------------------------------------------------------------- PolygonShape

PolygonShape::PolygonShape(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
    if (verts_.size() < 3) fail(ErrorCode::EmptySet, "polygon needs >= 3 vertices");
    // Enforce counterclockwise orientation via the shoelace sign.
    double area2 = 0;
    for (size_t i = 0; i < verts_.size(); ++i) {
        const Vec2& a = verts_[i];
        const Vec2& b = verts_[(i + 1) % verts_.size()];
        area2 += a.cross(b);
    }
    if (area2 < 0) std::reverse(verts_.begin(), verts_.end());
}

bool PolygonShape::contains(const Vec2& p) const {
    // Crossing parity with on-edge points counted as inside.
    if (boundary_distance(p) == 0) return true;
    bool in = false;
    size_t n = verts_.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = verts_[j];
        const Vec2& b = verts_[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            double xint = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
            if (p.x < xint) in = !in;
        }
    }
    return in;
}

double PolygonShape::boundary_distance(const Vec2& p) const {
    double d = kInf;
    size_t n = verts_.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++)
        d = std::min(d, segment_distance(verts_[j], verts_[i], p));
    return d;
}

double PolygonShape::signed_distance(const Vec2& p) const {
    double d = boundary_distance(p);
    return contains(p) ? -d : d;
}

BBox PolygonShape::bbox() const {
    BBox b;
    for (const Vec2& v : verts_) b.expand(v);
    return b;
}

bool PolygonShape::convex() const {
    size_t n = verts_.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 e1 = verts_[(i + 1) % n] - verts_[i];
        Vec2 e2 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
        if (e1.cross(e2) < -1e-12) return false;
    }
    return true;
}

std::string PolygonShape::describe() const {
    return "polygon(" + std::to_string(verts_.size()) + " vertices)";
}

// --------------------------------------------------------------- UnionShape

UnionShape::UnionShape(std::vector<ShapePtr> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) fail(ErrorCode::EmptySet, "union of nothing");
}

bool UnionShape::contains(const Vec2& p) const {
    for (const auto& s : parts_)
        if (s->contains(p)) return true;
    return false;
}

double UnionShape::signed_distance(const Vec2& p) const {
    double d = kInf;
    for (const auto& s : parts_) d = std::min(d, s->signed_distance(p));
    return d;
}

BBox UnionShape::bbox() const {
    BBox b;
    for (const auto& s : parts_) b.expand(s->bbox());
    return b;
}

std::string UnionShape::describe() const {
    return "union(" + std::to_string(parts_.size()) + " parts)";
}

// ---------------------------------------------------------- DifferenceShape

DifferenceShape::DifferenceShape(ShapePtr a, ShapePtr b) : a_(std::move(a)), b_(std::move(b)) {}

bool DifferenceShape::contains(const Vec2& p) const {
    return a_->contains(p) && !b_->contains(p);
}

double DifferenceShape::signed_distance(const Vec2& p) const {
    return std::max(a_->signed_distance(p), -b_->signed_distance(p));
}

BBox DifferenceShape::bbox() const { return a_->bbox(); }
std::string DifferenceShape::describe() const {
    return "difference(" + a_->describe() + "," + b_->describe() + ")";
}

// ------------------------------------------------------------ TranslateShape

TranslateShape::TranslateShape(ShapePtr inner, Vec2 offset)
    : inner_(std::move(inner)), offset_(offset) {}

bool TranslateShape::contains(const Vec2& p) const { return inner_->contains(p - offset_); }
double TranslateShape::signed_distance(const Vec2& p) const {
    return inner_->signed_distance(p - offset_);
}
BBox TranslateShape::bbox() const {
    BBox b = inner_->bbox();
    return {b.lo + offset_, b.hi + offset_};
}
bool TranslateShape::is_curve() const { return inner_->is_curve(); }
std::vector<CurveSegment> TranslateShape::curve_segments(double max_len) const {
    auto segs = inner_->curve_segments(max_len);
    for (auto& s : segs) {
        s.a += offset_;
        s.b += offset_;
    }
    return segs;
}
std::string TranslateShape::describe() const {
    return "translate(" + inner_->describe() + ",(" + fmt(offset_.x) + "," + fmt(offset_.y) + "))";
}

// ------------------------------------------------------------- SegmentShape

SegmentShape::SegmentShape(Vec2 a, Vec2 b) : a_(a), b_(b) {
    if (dist(a, b) <= 0) fail(ErrorCode::EmptySet, "degenerate segment");
}

bool SegmentShape::contains(const Vec2& p) const { return segment_distance(a_, b_, p) == 0; }
double SegmentShape::signed_distance(const Vec2& p) const { return segment_distance(a_, b_, p); }
BBox SegmentShape::bbox() const {
    BBox b;
    b.expand(a_);
    b.expand(b_);
    return b;
}
std::vector<CurveSegment> SegmentShape::curve_segments(double max_len) const {
    return chop(a_, b_, max_len);
}
std::string SegmentShape::describe() const {
    return "segment((" + fmt(a_.x) + "," + fmt(a_.y) + ")-(" + fmt(b_.x) + "," + fmt(b_.y) + "))";
}

// ------------------------------------------------------------ PolylineShape

PolylineShape::PolylineShape(std::vector<CurveSegment> segs) : segs_(std::move(segs)) {
    if (segs_.empty()) fail(ErrorCode::EmptySet, "empty polyline");
}

bool PolylineShape::contains(const Vec2& p) const { return signed_distance(p) == 0; }

double PolylineShape::signed_distance(const Vec2& p) const {
    double d = kInf;
    for (const auto& s : segs_) d = std::min(d, segment_distance(s.a, s.b, p));
    return d;
}

BBox PolylineShape::bbox() const {
    BBox b;
    for (const auto& s : segs_) {
        b.expand(s.a);
        b.expand(s.b);
    }
    return b;
}

std::vector<CurveSegment> PolylineShape::curve_segments(double max_len) const {
    std::vector<CurveSegment> out;
    for (const auto& s : segs_) {
        auto parts = chop(s.a, s.b, max_len);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    return out;
}

std::string PolylineShape::describe() const {
    return "polyline(" + std::to_string(segs_.size()) + " segments)";
}

// ---------------------------------------------------------- BoundaryOfShape

BoundaryOfShape::BoundaryOfShape(ShapePtr solid) : solid_(std::move(solid)) {
    if (solid_->is_curve()) fail(ErrorCode::ModeViolation, "boundary_of expects a solid shape");
}

bool BoundaryOfShape::contains(const Vec2& p) const { return solid_->signed_distance(p) == 0; }
double BoundaryOfShape::signed_distance(const Vec2& p) const {
    return std::abs(solid_->signed_distance(p));
}
BBox BoundaryOfShape::bbox() const { return solid_->bbox(); }

std::vector<CurveSegment> BoundaryOfShape::curve_segments(double max_len) const {
    // Walk the zero level set of the solid's signed distance on a fine grid.
    // Resolution ties to the requested chop length.
    BBox b = solid_->bbox().padded(2 * max_len);
    double step = max_len;
    int nx = (int)std::ceil(b.width() / step);
    int ny = (int)std::ceil(b.height() / step);
    std::vector<CurveSegment> out;
    auto corner = [&](int i, int j) { return Vec2{b.lo.x + i * step, b.lo.y + j * step}; };
    auto val = [&](int i, int j) { return solid_->signed_distance(corner(i, j)); };
    for (int j = 0; j < ny; ++j) {
        std::vector<double> row0(nx + 1), row1(nx + 1);
        for (int i = 0; i <= nx; ++i) {
            row0[i] = val(i, j);
            row1[i] = val(i, j + 1);
        }
        for (int i = 0; i < nx; ++i) {
            double v00 = row0[i], v10 = row0[i + 1], v01 = row1[i], v11 = row1[i + 1];
            int code = (v00 < 0) | ((v10 < 0) << 1) | ((v11 < 0) << 2) | ((v01 < 0) << 3);
            if (code == 0 || code == 15) continue;
            auto lerp = [](const Vec2& a, const Vec2& b2, double va, double vb) {
                double t = va / (va - vb);
                return a + (b2 - a) * std::clamp(t, 0.0, 1.0);
            };
            Vec2 c00 = corner(i, j), c10 = corner(i + 1, j), c01 = corner(i, j + 1),
                 c11 = corner(i + 1, j + 1);
            std::vector<Vec2> pts;
            if ((v00 < 0) != (v10 < 0)) pts.push_back(lerp(c00, c10, v00, v10));
            if ((v10 < 0) != (v11 < 0)) pts.push_back(lerp(c10, c11, v10, v11));
            if ((v11 < 0) != (v01 < 0)) pts.push_back(lerp(c11, c01, v11, v01));
            if ((v01 < 0) != (v00 < 0)) pts.push_back(lerp(c01, c00, v01, v00));
            if (pts.size() == 2) out.push_back({pts[0], pts[1]});
            else if (pts.size() == 4) {
                out.push_back({pts[0], pts[1]});
                out.push_back({pts[2], pts[3]});
            }
        }
    }
    return out;
}

std::string BoundaryOfShape::describe() const { return "boundary_of(" + solid_->describe() + ")"; }

// -------------------------------------------------------------- BitmapShape

BitmapShape::BitmapShape(BBox box, double h, int nx, int ny, std::vector<uint8_t> occ)
    : box_(box), h_(h), nx_(nx), ny_(ny), occ_(std::move(occ)) {}

bool BitmapShape::contains(const Vec2& p) const {
    int ix = (int)std::floor((p.x - box_.lo.x) / h_);
    int iy = (int)std::floor((p.y - box_.lo.y) / h_);
    if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return false;
    return occ_[(size_t)iy * nx_ + ix] != 0;
}

double BitmapShape::signed_distance(const Vec2& p) const {
    // Quantized: inside cells count as depth h/2; good enough for a raw bitmap.
    return contains(p) ? -h_ / 2 : h_ / 2;
}

BBox BitmapShape::bbox() const { return box_; }
std::string BitmapShape::describe() const {
    return "bitmap(" + std::to_string(nx_) + "x" + std::to_string(ny_) + ")";
}

// ----------------------------------------------------------------- factories

ShapePtr make_disk(Vec2 c, double r) { return std::make_shared<DiskShape>(c, r); }
ShapePtr make_rect(Vec2 lo, Vec2 hi) { return std::make_shared<RectShape>(lo, hi); }
ShapePtr make_polygon(std::vector<Vec2> v) { return std::make_shared<PolygonShape>(std::move(v)); }
ShapePtr make_union(std::vector<ShapePtr> p) { return std::make_shared<UnionShape>(std::move(p)); }
ShapePtr make_difference(ShapePtr a, ShapePtr b) {
    return std::make_shared<DifferenceShape>(std::move(a), std::move(b));
}
ShapePtr make_segment(Vec2 a, Vec2 b) { return std::make_shared<SegmentShape>(a, b); }
ShapePtr make_polyline(std::vector<CurveSegment> s) {
    return std::make_shared<PolylineShape>(std::move(s));
}
ShapePtr make_boundary_of(ShapePtr s) { return std::make_shared<BoundaryOfShape>(std::move(s)); }
ShapePtr make_translate(ShapePtr s, Vec2 off) {
    return std::make_shared<TranslateShape>(std::move(s), off);
}

}  // namespace setderiv
