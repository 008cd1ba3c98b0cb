#pragma once

#include <memory>
#include <string>
#include <vector>

#include "setderiv/geometry.hpp"

namespace setderiv {

struct CurveSegment {
    Vec2 a, b;
};

/// Declarative shape with exact membership and a signed distance whose zero
/// level set is the shape boundary. For composites (union/difference) the
/// signed value away from the boundary is only a bound, but membership and the
/// distance on the outside of the whole set stay exact, which is what the
/// rasterizer and the family predicates rely on.
class Shape {
public:
    virtual ~Shape() = default;

    virtual bool contains(const Vec2& p) const = 0;
    /// Negative inside, positive outside, zero on the boundary.
    virtual double signed_distance(const Vec2& p) const = 0;
    virtual BBox bbox() const = 0;
    /// Curves (segments, polylines, boundaries-of) have empty interior.
    virtual bool is_curve() const { return false; }
    /// For curve shapes: the curve chopped into pieces of length <= max_len.
    virtual std::vector<CurveSegment> curve_segments(double max_len) const;
    virtual std::string describe() const = 0;

    /// Distance to the set (0 inside).
    double distance(const Vec2& p) const {
        double s = signed_distance(p);
        return s > 0 ? s : 0.0;
    }
};

using ShapePtr = std::shared_ptr<const Shape>;

class DiskShape final : public Shape {
public:
    DiskShape(Vec2 center, double radius);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    std::string describe() const override;
    Vec2 center() const { return center_; }
    double radius() const { return radius_; }

private:
    Vec2 center_;
    double radius_;
};

class RectShape final : public Shape {
public:
    RectShape(Vec2 lo, Vec2 hi);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    std::string describe() const override;
    Vec2 lo() const { return lo_; }
    Vec2 hi() const { return hi_; }

private:
    Vec2 lo_, hi_;
};

/// Simple polygon, vertices in counterclockwise order.
class PolygonShape final : public Shape {
public:
    explicit PolygonShape(std::vector<Vec2> vertices);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    std::string describe() const override;
    const std::vector<Vec2>& vertices() const { return verts_; }
    bool convex() const;
    /// Distance to the polygon outline (not signed).
    double boundary_distance(const Vec2& p) const;

private:
    std::vector<Vec2> verts_;
};

class UnionShape final : public Shape {
public:
    explicit UnionShape(std::vector<ShapePtr> parts);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    std::string describe() const override;
    const std::vector<ShapePtr>& parts() const { return parts_; }

private:
    std::vector<ShapePtr> parts_;
};

class DifferenceShape final : public Shape {
public:
    DifferenceShape(ShapePtr a, ShapePtr b);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    std::string describe() const override;

private:
    ShapePtr a_, b_;
};

class TranslateShape final : public Shape {
public:
    TranslateShape(ShapePtr inner, Vec2 offset);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    bool is_curve() const override;
    std::vector<CurveSegment> curve_segments(double max_len) const override;
    std::string describe() const override;

private:
    ShapePtr inner_;
    Vec2 offset_;
};

/// One line segment, as a set with empty interior.
class SegmentShape final : public Shape {
public:
    SegmentShape(Vec2 a, Vec2 b);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    bool is_curve() const override { return true; }
    std::vector<CurveSegment> curve_segments(double max_len) const override;
    std::string describe() const override;

private:
    Vec2 a_, b_;
};

/// A list of segments treated as one curve (used for crack/boundary sets).
class PolylineShape final : public Shape {
public:
    explicit PolylineShape(std::vector<CurveSegment> segs);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    bool is_curve() const override { return true; }
    std::vector<CurveSegment> curve_segments(double max_len) const override;
    std::string describe() const override;

private:
    std::vector<CurveSegment> segs_;
};

/// The boundary curve of a solid shape.
class BoundaryOfShape final : public Shape {
public:
    explicit BoundaryOfShape(ShapePtr solid);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    bool is_curve() const override { return true; }
    std::vector<CurveSegment> curve_segments(double max_len) const override;
    std::string describe() const override;
    ShapePtr solid() const { return solid_; }

private:
    ShapePtr solid_;
};

/// Shape described only by an occupancy bitmap (no analytic refinement).
class BitmapShape final : public Shape {
public:
    BitmapShape(BBox box, double h, int nx, int ny, std::vector<uint8_t> occ);
    bool contains(const Vec2& p) const override;
    double signed_distance(const Vec2& p) const override;
    BBox bbox() const override;
    std::string describe() const override;

private:
    BBox box_;
    double h_;
    int nx_, ny_;
    std::vector<uint8_t> occ_;
};

ShapePtr make_disk(Vec2 center, double radius);
ShapePtr make_rect(Vec2 lo, Vec2 hi);
ShapePtr make_polygon(std::vector<Vec2> verts);
ShapePtr make_union(std::vector<ShapePtr> parts);
ShapePtr make_difference(ShapePtr a, ShapePtr b);
ShapePtr make_segment(Vec2 a, Vec2 b);
ShapePtr make_polyline(std::vector<CurveSegment> segs);
ShapePtr make_boundary_of(ShapePtr solid);
ShapePtr make_translate(ShapePtr inner, Vec2 offset);

}  // namespace setderiv
