#pragma once

#include <vector>

#include "kisin/lattice.hpp"
#include "kisin/rational.hpp"

namespace kisin {

/// Point of the Bruhat-Tits tree of PGL2(F_q((u))): a vertex (homothety
/// class) or an interior point of an edge, stored with the lexicographically
/// smaller endpoint first and offset t in (0,1) measured from it.
class BuildingPoint {
public:
    BuildingPoint() = default;
    explicit BuildingPoint(VertexClass v) : v0_(std::move(v)), t_(0) {}
    /// Interior point at distance t from v0 on the edge (v0, v1); callers must
    /// pass adjacent vertices. t = 0 or 1 collapses to the matching vertex.
    BuildingPoint(VertexClass v0, VertexClass v1, Rat t);

    static BuildingPoint vertex(VertexClass v) { return BuildingPoint(std::move(v)); }

    bool is_vertex() const { return t_.is_zero(); }
    const VertexClass& as_vertex() const;
    const VertexClass& edge_v0() const { return v0_; }
    const VertexClass& edge_v1() const { return v1_; }
    const Rat& offset() const { return t_; }

    const FieldSpec* spec() const { return v0_.spec(); }

    friend bool operator==(const BuildingPoint& x, const BuildingPoint& y) {
        return x.t_ == y.t_ && x.v0_ == y.v0_ && (x.is_vertex() || x.v1_ == y.v1_);
    }
    friend bool operator!=(const BuildingPoint& x, const BuildingPoint& y) { return !(x == y); }

    std::string str() const;

private:
    VertexClass v0_, v1_;
    Rat t_; // 0 => vertex v0_
};

/// Tree distance between homothety classes (difference of the elementary
/// divisors of canonical representatives).
int dist(const VertexClass& v, const VertexClass& w);

Rat dist(const BuildingPoint& x, const VertexClass& w);
Rat dist(const BuildingPoint& x, const BuildingPoint& y);

/// The unique vertex path from v to w (dist+1 entries, consecutive adjacent).
/// Computed from a common frame: vectors (w1, w2) with v = [span{w1, w2}] and
/// w = [span{u^D w1, w2}]; the path is [span{u^j w1, w2}] for j = 0..D.
std::vector<VertexClass> geodesic(const VertexClass& v, const VertexClass& w);

/// The point of [v, w] at distance t from v, 0 <= t <= dist(v, w).
BuildingPoint point_on_geodesic(const VertexClass& v, const VertexClass& w, const Rat& t);

BuildingPoint midpoint(const VertexClass& v, const VertexClass& w);

/// Is x on the segment [v, w]?
bool on_geodesic(const BuildingPoint& x, const VertexClass& v, const VertexClass& w);

/// The point of [v, w] closest to x (the gate of x in the segment).
BuildingPoint project_to_segment(const BuildingPoint& x, const VertexClass& v, const VertexClass& w);

/// All vertices within distance radius of center, sorted canonically.
std::vector<VertexClass> ball_vertices(const BuildingPoint& center, const Rat& radius);

/// Continue the geodesic [from, through] past `through` by `steps` more edges,
/// choosing the canonically smallest neighbor at each step; returns the new
/// endpoint. Requires from != through.
VertexClass extend_ray(const VertexClass& from, const VertexClass& through, int steps);

} // namespace kisin
