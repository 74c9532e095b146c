#include "kisin/tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kisin {

BuildingPoint::BuildingPoint(VertexClass v0, VertexClass v1, Rat t) {
    if (t < Rat(0) || t > Rat(1)) throw OutOfRange("BuildingPoint: offset outside [0,1]");
    if (t == Rat(0)) { v0_ = std::move(v0); return; }
    if (t == Rat(1)) { v0_ = std::move(v1); t_ = Rat(0); return; }
    if (v1 < v0) { std::swap(v0, v1); t = Rat(1) - t; }
    v0_ = std::move(v0);
    v1_ = std::move(v1);
    t_ = t;
}

const VertexClass& BuildingPoint::as_vertex() const {
    if (!is_vertex()) throw Error("BuildingPoint: not a vertex");
    return v0_;
}

std::string BuildingPoint::str() const {
    std::ostringstream os;
    if (is_vertex()) {
        os << "vertex(d=" << v0_.d << ", f=" << v0_.f.str() << ")";
    } else {
        os << "interior((d=" << v0_.d << ",f=" << v0_.f.str() << "), (d=" << v1_.d
           << ",f=" << v1_.f.str() << "), t=" << t_.str() << ")";
    }
    return os.str();
}

int dist(const VertexClass& v, const VertexClass& w) {
    if (v == w) return 0;
    auto [a, b] = elementary_divisors(v.rep(), w.rep());
    return a - b;
}

Rat dist(const BuildingPoint& x, const VertexClass& w) {
    if (x.is_vertex()) return Rat(dist(x.as_vertex(), w));
    Rat d0 = Rat(dist(w, x.edge_v0())) + x.offset();
    Rat d1 = Rat(dist(w, x.edge_v1())) + (Rat(1) - x.offset());
    return min(d0, d1);
}

Rat dist(const BuildingPoint& x, const BuildingPoint& y) {
    if (y.is_vertex()) return dist(x, y.as_vertex());
    if (x.is_vertex()) return dist(y, x.as_vertex());
    // Same edge: both stored with the same canonical orientation.
    if (x.edge_v0() == y.edge_v0() && x.edge_v1() == y.edge_v1())
        return abs(x.offset() - y.offset());
    Rat best = dist(BuildingPoint::vertex(x.edge_v0()), y) + x.offset();
    Rat other = dist(BuildingPoint::vertex(x.edge_v1()), y) + (Rat(1) - x.offset());
    return min(best, other);
}

namespace {

// Common frame for two classes: vectors (w1, w2) and D = dist such that
// v = [span{w1, w2}] and w = [span{u^D w1, w2}].
struct Frame {
    Vec2 w1, w2;
    int D;
};

Frame common_frame(const VertexClass& v, const VertexClass& w) {
    const FieldSpec* s = v.spec();
    Lattice M = v.rep();
    auto [a, b] = elementary_divisors(w.rep(), M);
    int D = a - b;
    // N = u^{-b} * (rep of w) sits inside M with divisors (D, 0).
    Lattice N = w.rep().scaled(-b);
    Mat2 MB = M.basis();
    Mat2 NB = N.basis();
    LaurentElement u1 = LaurentElement::upow(s, 1);

    // w2: a vector of N outside uM. One of the two basis columns works.
    Mat2 uMB = Mat2(MB.a() * u1, MB.b() * u1, MB.c() * u1, MB.d() * u1);
    Vec2 n1{NB.a(), NB.c()};
    Vec2 n2{NB.b(), NB.d()};
    Vec2 w2 = lattice_contains(uMB, n1) ? n2 : n1;

    // w1: complete w2 to a basis of M; again one of M's columns works
    // (det(w1, w2) must have the valuation of det M).
    int vdetM = M.det_val();
    Vec2 m1{MB.a(), MB.c()};
    Vec2 m2{MB.b(), MB.d()};
    auto det_with = [&](const Vec2& c) {
        LaurentElement d = c[0] * w2[1] - c[1] * w2[0];
        return d.is_zero() ? INT32_MAX : d.val();
    };
    Vec2 w1 = det_with(m1) == vdetM ? m1 : m2;
    if (det_with(w1) != vdetM) throw Error("common_frame: no completing column"); // unreachable
    return Frame{w1, w2, D};
}

VertexClass frame_vertex(const Frame& fr, int j) {
    const FieldSpec* s = fr.w1[0].spec();
    LaurentElement uj = LaurentElement::upow(s, j);
    return vertex_canonical(hnf(Mat2(fr.w1[0] * uj, fr.w2[0], fr.w1[1] * uj, fr.w2[1])));
}

} // namespace

std::vector<VertexClass> geodesic(const VertexClass& v, const VertexClass& w) {
    if (v == w) return {v};
    Frame fr = common_frame(v, w);
    std::vector<VertexClass> path;
    path.reserve(static_cast<size_t>(fr.D) + 1);
    for (int j = 0; j <= fr.D; ++j) path.push_back(frame_vertex(fr, j));
    return path;
}

BuildingPoint point_on_geodesic(const VertexClass& v, const VertexClass& w, const Rat& t) {
    if (t < Rat(0)) throw OutOfRange("point_on_geodesic: negative parameter");
    if (v == w) {
        if (!t.is_zero()) throw OutOfRange("point_on_geodesic: parameter beyond segment");
        return BuildingPoint::vertex(v);
    }
    Frame fr = common_frame(v, w);
    if (t > Rat(fr.D)) throw OutOfRange("point_on_geodesic: parameter beyond segment");
    long long k = t.floor();
    if (Rat(k) == t) return BuildingPoint::vertex(frame_vertex(fr, static_cast<int>(k)));
    return BuildingPoint(frame_vertex(fr, static_cast<int>(k)), frame_vertex(fr, static_cast<int>(k) + 1),
                         t - Rat(k));
}

BuildingPoint midpoint(const VertexClass& v, const VertexClass& w) {
    return point_on_geodesic(v, w, Rat(dist(v, w), 2));
}

bool on_geodesic(const BuildingPoint& x, const VertexClass& v, const VertexClass& w) {
    return dist(x, v) + dist(x, w) == Rat(dist(v, w));
}

BuildingPoint project_to_segment(const BuildingPoint& x, const VertexClass& v, const VertexClass& w) {
    int D = dist(v, w);
    if (D == 0) return BuildingPoint::vertex(v);
    // Gromov product: the gate sits at (d(x,v) - d(x,w) + D)/2 from v.
    Rat t = (dist(x, v) - dist(x, w) + Rat(D)) / Rat(2);
    t = max(Rat(0), min(Rat(D), t));
    return point_on_geodesic(v, w, t);
}

namespace {

void ball_from_vertex(const VertexClass& start, long long budget, std::set<VertexClass>& out) {
    if (budget < 0) return;
    std::set<VertexClass> seen{start};
    std::vector<VertexClass> frontier{start};
    out.insert(start);
    for (long long depth = 1; depth <= budget; ++depth) {
        std::vector<VertexClass> next;
        for (const auto& v : frontier)
            for (auto& nb : neighbors(v))
                if (seen.insert(nb).second) {
                    out.insert(nb);
                    next.push_back(std::move(nb));
                }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
}

} // namespace

std::vector<VertexClass> ball_vertices(const BuildingPoint& center, const Rat& radius) {
    std::set<VertexClass> acc;
    if (center.is_vertex()) {
        ball_from_vertex(center.as_vertex(), radius.floor(), acc);
    } else {
        ball_from_vertex(center.edge_v0(), (radius - center.offset()).floor(), acc);
        ball_from_vertex(center.edge_v1(), (radius - Rat(1) + center.offset()).floor(), acc);
    }
    return {acc.begin(), acc.end()};
}

VertexClass extend_ray(const VertexClass& from, const VertexClass& through, int steps) {
    if (from == through) throw Error("extend_ray: degenerate ray");
    VertexClass prev = from;
    VertexClass cur = through;
    // Walk to `through` first so `prev` is its true predecessor on the ray.
    auto path = geodesic(from, through);
    prev = path[path.size() - 2];
    for (int k = 0; k < steps; ++k) {
        VertexClass next;
        bool found = false;
        for (const auto& nb : neighbors(cur)) {
            if (nb == prev) continue;
            next = nb; // neighbors() is sorted: first non-predecessor is smallest
            found = true;
            break;
        }
        if (!found) throw Error("extend_ray: no continuation"); // q >= 2 makes this unreachable
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace kisin
