#include "kisin/connect.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kisin {

namespace {

int norm_parity(long long x) { return static_cast<int>(((x % 2) + 2) % 2); }

// Largest integer <= R with the given parity; nullopt when none is >= 0.
std::optional<long long> parity_floor(const Rat& R, int parity) {
    long long k = R.floor();
    if (norm_parity(k) != parity) --k;
    if (k < 0) return std::nullopt;
    return k;
}

// The point at distance t from a along [a, b], for general building points.
BuildingPoint point_between(const BuildingPoint& a, const BuildingPoint& b, const Rat& t) {
    Rat D = dist(a, b);
    if (t < Rat(0) || t > D) throw OutOfRange("point_between: parameter outside segment");
    if (t.is_zero()) return a;
    if (t == D) return b;
    if (a.is_vertex() && b.is_vertex())
        return point_on_geodesic(a.as_vertex(), b.as_vertex(), t);
    if (a.is_vertex()) {
        // mirror so the interior endpoint leads
        return point_between(b, a, D - t);
    }
    // a is interior on (v0, v1)
    const VertexClass& v0 = a.edge_v0();
    const VertexClass& v1 = a.edge_v1();
    if (!b.is_vertex() && b.edge_v0() == v0 && b.edge_v1() == v1) {
        Rat off = b.offset() > a.offset() ? a.offset() + t : a.offset() - t;
        return BuildingPoint(v0, v1, off);
    }
    if (b.is_vertex() && (b.as_vertex() == v0 || b.as_vertex() == v1)) {
        Rat off = b.as_vertex() == v1 ? a.offset() + t : a.offset() - t;
        return BuildingPoint(v0, v1, off);
    }
    // leave a's edge through the endpoint nearer to b
    Rat via0 = dist(b, v0) + a.offset();
    Rat via1 = dist(b, v1) + (Rat(1) - a.offset());
    const VertexClass& exit = via0 < via1 ? v0 : v1;
    Rat s = via0 < via1 ? a.offset() : Rat(1) - a.offset();
    if (t <= s) {
        Rat off = exit == v0 ? a.offset() - t : a.offset() + t;
        return BuildingPoint(v0, v1, off);
    }
    return point_between(BuildingPoint::vertex(exit), b, t - s);
}

// Attainable distances from a point to the vertices of one parity class form
// one or two arithmetic progressions of step 2.
struct Progression {
    Rat base;          // smallest attainable value
    VertexClass anchor; // the vertex realizing base when base < 1 (a = 0 case)
    bool base_is_anchor; // base attained by the anchor vertex itself
    long long q;       // field size, for counting
    long long base_steps; // integer part a of base relative to anchor
};

std::vector<Progression> attainable(const BuildingPoint& c, int parity) {
    std::vector<Progression> out;
    long long q = c.spec()->q();
    if (c.is_vertex()) {
        int o = norm_parity(parity - c.as_vertex().parity());
        out.push_back({Rat(o), c.as_vertex(), o == 0, q, o});
        return out;
    }
    int a0 = norm_parity(parity - c.edge_v0().parity());
    int a1 = norm_parity(parity - c.edge_v1().parity());
    out.push_back({c.offset() + Rat(a0), c.edge_v0(), a0 == 0, q, a0});
    out.push_back({Rat(1) - c.offset() + Rat(a1), c.edge_v1(), a1 == 0, q, a1});
    return out;
}

// Number of parity-matched vertices at distance exactly (base + 2k) from c
// along one progression: behind an edge endpoint only q directions continue.
long long progression_count(const BuildingPoint& c, const Progression& pr, long long k) {
    long long steps = pr.base_steps + 2 * k;
    if (steps == 0) return 1;
    long long dirs = c.is_vertex() ? pr.q + 1 : pr.q;
    long long cnt = dirs;
    for (long long j = 1; j < steps; ++j) cnt *= pr.q;
    return cnt;
}

// Max attainable distance <= B, and whether the sub-B vertex set has 0, 1 or
// more elements. Returns (max value or nullopt, count clipped at 2).
std::pair<std::optional<Rat>, int> attainable_stats(const BuildingPoint& c, int parity, const Rat& B,
                                                    VertexClass* unique_out) {
    std::optional<Rat> best;
    long long count = 0;
    for (const auto& pr : attainable(c, parity)) {
        if (B < pr.base) continue;
        long long kmax = ((B - pr.base) / Rat(2)).floor();
        Rat top = pr.base + Rat(2 * kmax);
        if (!best || top > *best) best = top;
        for (long long k = 0; k <= kmax && count < 2; ++k) {
            long long cnt = progression_count(c, pr, k);
            if (count == 0 && cnt >= 1 && unique_out && k == 0 && pr.base_is_anchor)
                *unique_out = pr.anchor;
            count += cnt;
        }
        if (count >= 2) break;
    }
    return {best, static_cast<int>(std::min<long long>(count, 2))};
}

} // namespace

std::vector<Lattice> BallDescription::points() const {
    std::vector<Lattice> out;
    int par = norm_parity(det_class);
    for (const auto& v : ball_vertices(center, radius)) {
        if (v.parity() != par) continue;
        out.push_back(v.rep_with_det(det_class));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<BallDescription> two_ball_reduce(const BuildingPoint& x1, const Rat& r1,
                                               const BuildingPoint& x2, const Rat& r2, int det_class) {
    if (r1 < Rat(0) || r2 < Rat(0)) return std::nullopt;
    Rat D = dist(x1, x2);
    if (D > r1 + r2) return std::nullopt;

    // One-ball form: y at (D + r1 - r2)/2 from x1 (clamped when one ball
    // swallows the other), radius (r1 + r2 - D)/2.
    Rat ty = (D + r1 - r2) / Rat(2);
    Rat R = (r1 + r2 - D) / Rat(2);
    if (ty < Rat(0)) { ty = Rat(0); R = r1; }
    if (ty > D) { ty = D; R = r2; }
    BuildingPoint y = point_between(x1, x2, ty);

    int par = norm_parity(det_class);
    if (y.is_vertex()) {
        auto rr = parity_floor(R, norm_parity(par - y.as_vertex().parity()));
        if (!rr) return std::nullopt;
        return BallDescription{y, Rat(*rr), det_class};
    }
    // Vertex refinement: the set splits over the two endpoints; opposite
    // parities make one side's adjusted ball contain the other.
    auto A0 = parity_floor(R - y.offset(), norm_parity(par - y.edge_v0().parity()));
    auto A1 = parity_floor(R - Rat(1) + y.offset(), norm_parity(par - y.edge_v1().parity()));
    if (!A0 && !A1) return std::nullopt;
    if (A0 && (!A1 || *A0 > *A1))
        return BallDescription{BuildingPoint::vertex(y.edge_v0()), Rat(*A0), det_class};
    return BallDescription{BuildingPoint::vertex(y.edge_v1()), Rat(*A1), det_class};
}

PhiChain::PhiChain(const FieldSpec* s, std::vector<Mat2> ms) : spec(s), mats(std::move(ms)) {
    for (const auto& m : mats) {
        if (m.spec() != s) throw SpecMismatch("PhiChain: matrix over wrong field");
        if (m.det().is_zero()) throw SingularMatrix("PhiChain: maps must have invertible linearization");
    }
}

Lattice PhiChain::apply(int j, const Lattice& L) const {
    return hnf(mats[static_cast<size_t>(j)] * L.basis().substitute_upow(p()));
}

VertexClass PhiChain::apply(int j, const VertexClass& v) const {
    return vertex_canonical(apply(j, v.rep()));
}

BuildingPoint PhiChain::apply(int j, const BuildingPoint& x) const {
    if (x.is_vertex()) return BuildingPoint::vertex(apply(j, x.as_vertex()));
    VertexClass a = apply(j, x.edge_v0());
    VertexClass b = apply(j, x.edge_v1());
    return point_on_geodesic(a, b, x.offset() * Rat(p()));
}

ImageProjection project_to_image(const PhiChain& chain, int j_from, int count, const BuildingPoint& x) {
    if (count < 1 || j_from + count > chain.len()) throw Error("project_to_image: bad map range");
    long long P = 1;
    for (int j = 0; j < count; ++j) P *= chain.p();

    auto fwd = [&](const VertexClass& v) {
        VertexClass out = v;
        for (int j = 0; j < count; ++j) out = chain.apply(j_from + j, out);
        return out;
    };

    // Minimize g(z) = dist(x, image of z) over the source tree: g is convex
    // with slopes +-P along edges, so greedy descent to a vertex-local min
    // and a per-incident-edge foot refinement find the global minimum.
    VertexClass z = VertexClass::base(chain.spec);
    Rat gz = dist(x, fwd(z));
    for (long long guard = 0;; ++guard) {
        if (guard > 100000) throw Error("project_to_image: descent did not terminate");
        bool moved = false;
        for (const auto& nb : neighbors(z)) {
            Rat gn = dist(x, fwd(nb));
            if (gn < gz) { z = nb; gz = gn; moved = true; break; }
        }
        if (!moved) break;
    }

    VertexClass Fz = fwd(z);
    ImageProjection best{BuildingPoint::vertex(Fz), BuildingPoint::vertex(z), gz};
    for (const auto& nb : neighbors(z)) {
        VertexClass Fn = fwd(nb);
        BuildingPoint foot = project_to_segment(x, Fz, Fn);
        Rat d = dist(x, foot);
        if (d < best.t) {
            Rat along = dist(foot, Fz); // in [0, P]
            best = ImageProjection{foot, point_on_geodesic(z, nb, along / Rat(P)), d};
        }
    }
    return best;
}

std::optional<BallDescription> fiber_reduce(const PhiChain& chain, const Lattice& M1, const Lattice& Ms,
                                            const std::vector<int>& r, const std::vector<int>& m) {
    int s = chain.len() + 1;
    if (s < 3) throw Error("fiber_reduce: need s >= 3");
    if (static_cast<int>(r.size()) != s - 1 || static_cast<int>(m.size()) != s - 2)
        throw Error("fiber_reduce: radii/classes arity mismatch");
    long long p = chain.p();

    auto det_of_slot = [&](int k) { // det valuation of slot k, 1-based
        if (k == 1) return static_cast<long long>(M1.det_val());
        return static_cast<long long>(m[static_cast<size_t>(k - 2)]);
    };
    auto delta = [&](int k) { // val det of the map into slot k
        return static_cast<long long>(chain.mats[static_cast<size_t>(k - 2)].det().val());
    };

    // Backward elimination: (c, B) is the constraint d(class M_{k-1}, c) <= B
    // after the slots k..s-1 have been eliminated.
    BuildingPoint c = BuildingPoint::vertex(vertex_canonical(Ms));
    Rat B = Rat(r[static_cast<size_t>(s - 2)]); // r_s
    for (int k = s; k >= 3; --k) {
        // Pull the constraint on the image of M_{k-1} back to the source tree.
        ImageProjection pr = project_to_image(chain, k - 2, 1, c);
        if (B < pr.t) return std::nullopt;
        c = pr.preimage;
        B = (B - pr.t) / Rat(p);

        if (k - 1 == 2) break;

        // Eliminate the free slot k-1: exists a class of parity m_{k-1} within
        // B of c and within r_{k-1} of the image of slot k-2.
        int pi_xi = norm_parity(det_of_slot(k - 1));
        int pi_w = norm_parity(delta(k - 1) + p * det_of_slot(k - 2));
        VertexClass unique_xi;
        auto [Bstar, count] = attainable_stats(c, pi_xi, B, &unique_xi);
        if (!Bstar || count == 0) return std::nullopt;
        if (count == 1) {
            auto rr = parity_floor(Rat(r[static_cast<size_t>(k - 3)]), norm_parity(pi_xi - pi_w));
            if (!rr) return std::nullopt;
            c = BuildingPoint::vertex(unique_xi);
            B = Rat(*rr);
        } else {
            auto rr = parity_floor(Rat(r[static_cast<size_t>(k - 3)]), norm_parity(pi_xi - pi_w));
            if (!rr) return std::nullopt;
            B = *Bstar + Rat(*rr);
        }
    }

    VertexClass img1 = vertex_canonical(chain.apply(0, M1));
    return two_ball_reduce(BuildingPoint::vertex(img1), Rat(r[0]), c, B, m[0]);
}

std::vector<Lattice> chi_family(const Lattice& N1, const Lattice& N2) {
    const FieldSpec* spec = N1.spec();
    if (N1.det_val() != N2.det_val()) throw DetMismatch("chi_family: determinants differ");
    long long qsz = spec->q();
    if (N1 == N2) return std::vector<Lattice>(static_cast<size_t>(qsz) + 1, N1);

    auto [a, b] = elementary_divisors(N2, N1);
    int h = (a - b) / 2; // distance is even: equal determinants
    Lattice N = N2.scaled(h);  // divisors (2h, 0) with respect to N1

    // Frame: w2 in N outside u*N1, w1 completing w2 to a basis of N1.
    Mat2 MB = N1.basis();
    Mat2 NB = N.basis();
    LaurentElement u1 = LaurentElement::upow(spec, 1);
    Mat2 uMB(MB.a() * u1, MB.b() * u1, MB.c() * u1, MB.d() * u1);
    Vec2 n1{NB.a(), NB.c()}, n2{NB.b(), NB.d()};
    Vec2 w2 = lattice_contains(uMB, n1) ? n2 : n1;
    Vec2 m1{MB.a(), MB.c()}, m2{MB.b(), MB.d()};
    auto det_val_with = [&](const Vec2& cvec) {
        LaurentElement d = cvec[0] * w2[1] - cvec[1] * w2[0];
        return d.is_zero() ? INT32_MAX : d.val();
    };
    Vec2 w1 = det_val_with(m1) == N1.det_val() ? m1 : m2;

    // chi(z) = span{ w1 + z u^{-h} w2, w2 }; chi(infinity) = N2 exactly.
    std::vector<Lattice> out;
    out.reserve(static_cast<size_t>(qsz) + 1);
    for (const auto& z : FieldElement::all(spec)) {
        LaurentElement zs = LaurentElement::monomial(z, -h);
        Vec2 vz{w1[0] + zs * w2[0], w1[1] + zs * w2[1]};
        Lattice Lz = hnf(Mat2(vz[0], w2[0], vz[1], w2[1]));
        if (Lz.det_val() != N1.det_val())
            throw Error("chi_family: member with wrong determinant"); // bug trap
        out.push_back(std::move(Lz));
    }
    out.push_back(N2);
    return out;
}

int witness_index(const PhiModule& M0, const FixedPoint& fp, const KisinPoint& x) {
    const PhiModule M = M0.embedded_into(x.L[0].spec());
    for (int i = 0; i < M.n; ++i) {
        int prev = (i + M.n - 1) % M.n;
        VertexClass img = phibar(M, prev, vertex_canonical(x.L[static_cast<size_t>(prev)]));
        if (on_geodesic(fp.P[static_cast<size_t>(i)], vertex_canonical(x.L[static_cast<size_t>(i)]), img))
            return i;
    }
    throw NoWitness("witness_index: no factor places P_i on [class M_i, image of class M_{i-1}]");
}

std::vector<KisinPoint> mainstep_family(const PhiModule& M0, const Cochar& nu, const Enumeration& en,
                                        const KisinPoint& x, int i, const Lattice& Ni) {
    const PhiModule M = M0.embedded_into(x.L[0].spec());
    const size_t qplus1 = static_cast<size_t>(M.spec->q()) + 1;
    const Lattice& Mi = x.L[static_cast<size_t>(i)];
    if (Ni.det_val() != Mi.det_val())
        throw PreconditionViolated("mainstep_family: det N_i != det M_i");
    {
        int prev = (i + M.n - 1) % M.n;
        VertexClass img = phibar(M, prev, vertex_canonical(x.L[static_cast<size_t>(prev)]));
        if (!on_geodesic(en.fp.P[static_cast<size_t>(i)], vertex_canonical(Mi), img))
            throw PreconditionViolated("mainstep_family: i is not a witness index");
    }
    if (Ni == Mi) return std::vector<KisinPoint>(qplus1, x);

    BuildingPoint y = midpoint(vertex_canonical(Ni), vertex_canonical(Mi));
    if (!y.is_vertex()) throw PreconditionViolated("mainstep_family: midpoint not a vertex");
    // midpoint of [N_i, M_i] must sit on [P_i, M_i]; P_i may be interior, so
    // test by the distance equation
    if (dist(en.fp.P[static_cast<size_t>(i)], y.as_vertex()) + Rat(dist(y.as_vertex(), vertex_canonical(Mi))) !=
        dist(en.fp.P[static_cast<size_t>(i)], vertex_canonical(Mi)))
        throw PreconditionViolated("mainstep_family: midpoint of [N_i, M_i] not on [P_i, M_i]");

    std::map<int, std::vector<Lattice>> families;
    families[i] = chi_family(Mi, Ni);

    if (M.n > 1) {
        VertexClass y_cur = y.as_vertex();
        int jsrc = i;
        for (int step = 1; step < M.n; ++step) {
            int j = (i + step) % M.n;
            VertexClass y_img = phibar(M, jsrc, y_cur);
            VertexClass Mj = vertex_canonical(x.L[static_cast<size_t>(j)]);
            VertexClass Qj = nearest_Q(en.fp.P[static_cast<size_t>(j)], en.s[static_cast<size_t>(j)]);
            if (!on_geodesic(BuildingPoint::vertex(y_img), Qj, Mj)) break; // only slots so far vary
            int Dp = dist(y_img, Mj);
            VertexClass zj;
            if (Dp == 0) {
                zj = Mj;
            } else {
                int dq = dist(Mj, Qj);
                if (dq >= 2 * Dp) {
                    BuildingPoint zp = point_on_geodesic(Mj, Qj, Rat(2 * Dp));
                    zj = zp.as_vertex();
                } else {
                    zj = extend_ray(Mj, Qj, 2 * Dp - dq);
                }
            }
            families[j] = chi_family(x.L[static_cast<size_t>(j)],
                                     zj.rep_with_det(x.L[static_cast<size_t>(j)].det_val()));
            y_cur = y_img;
            jsrc = j;
        }
    }

    std::vector<KisinPoint> out;
    out.reserve(qplus1);
    for (size_t k = 0; k < qplus1; ++k) {
        KisinPoint pt = x;
        for (const auto& [j, fam] : families) pt.L[static_cast<size_t>(j)] = fam[k];
        MemberResult mr = is_member(M, nu, pt);
        if (!mr.member)
            throw MembershipLost("mainstep_family: constructed tuple fails membership: " + mr.reason);
        out.push_back(std::move(pt));
    }
    return out;
}

KisinPoint construct_MQ(const PhiModule& M0, const Cochar& nu, const Enumeration& en, int i) {
    const PhiModule M = M0.embedded_into(en.fp.P[0].spec());
    KisinPoint pt;
    pt.L.resize(static_cast<size_t>(M.n), Lattice::standard(M.spec));
    VertexClass Qi = nearest_Q(en.fp.P[static_cast<size_t>(i)], en.s[static_cast<size_t>(i)]);
    pt.L[static_cast<size_t>(i)] = Qi.rep_with_det(en.s[static_cast<size_t>(i)]);
    for (int step = 1; step < M.n; ++step) {
        int j = (i + step) % M.n;
        int prev = (i + step - 1) % M.n;
        VertexClass w = phibar(M, prev, vertex_canonical(pt.L[static_cast<size_t>(prev)]));
        VertexClass Qj = nearest_Q(en.fp.P[static_cast<size_t>(j)], en.s[static_cast<size_t>(j)]);
        int len = dist(Qj, w);
        // positions on [Q_j, w]: need len - k <= r_j and det-class parity (k even)
        int kmin = len - nu.r(j);
        if (kmin < 0) kmin = 0;
        if (kmin % 2 != 0) ++kmin;
        if (kmin > len)
            throw ConstraintEmpty("construct_MQ: no admissible lattice at factor " + std::to_string(j + 1));
        auto geo = geodesic(Qj, w);
        pt.L[static_cast<size_t>(j)] = geo[static_cast<size_t>(kmin)].rep_with_det(en.s[static_cast<size_t>(j)]);
    }
    return pt;
}

namespace {

struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    }
    int find(int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a); b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

int node_id(const std::map<KisinPoint, int>& ids, const KisinPoint& pt, const char* who) {
    auto it = ids.find(pt);
    if (it == ids.end())
        throw InternalDisagreement(std::string(who) + ": member tuple missing from enumeration");
    return it->second;
}

} // namespace

CertGraph build_graph(const PhiModule& M0, const Cochar& nu, const Enumeration& en, const GraphRules& rules) {
    const PhiModule M = M0.embedded_into(en.fp.P[0].spec());
    CertGraph g;
    g.nodes = en.points;
    std::map<KisinPoint, int> ids;
    for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k) ids.emplace(g.nodes[static_cast<size_t>(k)], k);
    std::set<std::tuple<int, int, std::string>> seen;
    auto add_edge = [&](CertEdge e) {
        if (e.u == e.v) return;
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!seen.insert({e.u, e.v, e.tag}).second) return;
        g.edges.push_back(std::move(e));
    };

    if (rules.single) {
        for (int u = 0; u < static_cast<int>(g.nodes.size()); ++u)
            for (int v = u + 1; v < static_cast<int>(g.nodes.size()); ++v) {
                int diff = -1, cnt = 0;
                for (int j = 0; j < M.n; ++j)
                    if (!(g.nodes[static_cast<size_t>(u)].L[static_cast<size_t>(j)] ==
                          g.nodes[static_cast<size_t>(v)].L[static_cast<size_t>(j)])) {
                        diff = j;
                        ++cnt;
                    }
                if (cnt == 1) add_edge(CertEdge{u, v, "single", diff, std::nullopt, std::nullopt});
            }
    }

    if (rules.chi) {
        for (int u = 0; u < static_cast<int>(g.nodes.size()); ++u) {
            const KisinPoint& x = g.nodes[static_cast<size_t>(u)];
            int i = witness_index(M, en.fp, x);
            const Lattice& Mi = x.L[static_cast<size_t>(i)];
            int par = norm_parity(en.s[static_cast<size_t>(i)]);
            for (const auto& cls : ball_vertices(en.fp.P[static_cast<size_t>(i)], en.R[static_cast<size_t>(i)])) {
                if (cls.parity() != par) continue;
                Lattice Ni = cls.rep_with_det(en.s[static_cast<size_t>(i)]);
                if (Ni == Mi) continue;
                // midpoint condition of the main step
                BuildingPoint y = midpoint(cls, vertex_canonical(Mi));
                if (!y.is_vertex()) continue;
                if (dist(en.fp.P[static_cast<size_t>(i)], y.as_vertex()) +
                        Rat(dist(y.as_vertex(), vertex_canonical(Mi))) !=
                    dist(en.fp.P[static_cast<size_t>(i)], vertex_canonical(Mi)))
                    continue;
                auto fam = mainstep_family(M, nu, en, x, i, Ni);
                std::vector<int> fam_ids;
                fam_ids.reserve(fam.size());
                for (const auto& t : fam) fam_ids.push_back(node_id(ids, t, "build_graph(chi)"));
                for (size_t s1 = 0; s1 < fam_ids.size(); ++s1)
                    for (size_t s2 = s1 + 1; s2 < fam_ids.size(); ++s2)
                        add_edge(CertEdge{fam_ids[s1], fam_ids[s2], "chi", i, Ni, std::nullopt});
            }
        }
    }

    if (rules.mq) {
        std::vector<std::optional<int>> hub(static_cast<size_t>(M.n));
        std::vector<KisinPoint> hubs(static_cast<size_t>(M.n));
        for (int i = 0; i < M.n; ++i) {
            // premise of the hub lemma: some point realizes Q_i in slot i
            VertexClass Qi = nearest_Q(en.fp.P[static_cast<size_t>(i)], en.s[static_cast<size_t>(i)]);
            Lattice Qlat = Qi.rep_with_det(en.s[static_cast<size_t>(i)]);
            bool premise = false;
            for (const auto& ptn : g.nodes)
                if (ptn.L[static_cast<size_t>(i)] == Qlat) { premise = true; break; }
            if (!premise) continue;
            KisinPoint mq;
            try {
                mq = construct_MQ(M, nu, en, i);
            } catch (const ConstraintEmpty&) {
                continue;
            }
            if (!is_member(M, nu, mq).member) continue;
            hub[static_cast<size_t>(i)] = node_id(ids, mq, "build_graph(mq)");
            hubs[static_cast<size_t>(i)] = mq;
            for (int u = 0; u < static_cast<int>(g.nodes.size()); ++u)
                if (g.nodes[static_cast<size_t>(u)].L[static_cast<size_t>(i)] == Qlat)
                    add_edge(CertEdge{u, *hub[static_cast<size_t>(i)], "mq", i, std::nullopt,
                                      std::make_pair(i, -1)});
        }
        for (int i = 0; i < M.n; ++i)
            for (int j = i + 1; j < M.n; ++j) {
                if (!hub[static_cast<size_t>(i)] || !hub[static_cast<size_t>(j)]) continue;
                const KisinPoint& a = hubs[static_cast<size_t>(i)];
                const KisinPoint& b = hubs[static_cast<size_t>(j)];
                if (a.L[static_cast<size_t>(j)] == b.L[static_cast<size_t>(j)] ||
                    a.L[static_cast<size_t>(i)] == b.L[static_cast<size_t>(i)])
                    add_edge(CertEdge{*hub[static_cast<size_t>(i)], *hub[static_cast<size_t>(j)], "mq", -1,
                                      std::nullopt, std::make_pair(i, j)});
            }
    }

    std::sort(g.edges.begin(), g.edges.end(), [](const CertEdge& a, const CertEdge& b) {
        return std::tie(a.u, a.v, a.tag) < std::tie(b.u, b.v, b.tag);
    });
    return g;
}

std::vector<std::vector<int>> components(const CertGraph& g) {
    DSU dsu(static_cast<int>(g.nodes.size()));
    for (const auto& e : g.edges) dsu.unite(e.u, e.v);
    std::map<int, std::vector<int>> groups;
    for (int k = 0; k < static_cast<int>(g.nodes.size()); ++k) groups[dsu.find(k)].push_back(k);
    std::vector<std::vector<int>> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

bool replay_certificate(const PhiModule& M0, const Cochar& nu, const Enumeration& en, const CertGraph& g,
                        const CertEdge& e) {
    const PhiModule M = M0.embedded_into(en.fp.P[0].spec());
    const KisinPoint& U = g.nodes[static_cast<size_t>(e.u)];
    const KisinPoint& V = g.nodes[static_cast<size_t>(e.v)];
    if (!is_member(M, nu, U).member || !is_member(M, nu, V).member) return false;
    if (e.tag == "single") {
        int cnt = 0;
        for (int j = 0; j < M.n; ++j)
            if (!(U.L[static_cast<size_t>(j)] == V.L[static_cast<size_t>(j)])) {
                if (j != e.slot) return false;
                ++cnt;
            }
        return cnt == 1;
    }
    if (e.tag == "chi") {
        if (!e.target) return false;
        // Rebuild the family from whichever endpoint was its seed.
        for (const KisinPoint* seed : {&U, &V}) {
            try {
                auto fam = mainstep_family(M, nu, en, *seed, e.slot, *e.target);
                bool hasU = false, hasV = false;
                for (const auto& t : fam) {
                    if (t == U) hasU = true;
                    if (t == V) hasV = true;
                }
                if (hasU && hasV) return true;
            } catch (const Error&) {
                continue;
            }
        }
        return false;
    }
    if (e.tag == "mq") {
        if (!e.hubs) return false;
        auto [i, j] = *e.hubs;
        if (j == -1) {
            KisinPoint mq = construct_MQ(M, nu, en, i);
            if (!(mq == V) && !(mq == U)) return false;
            const KisinPoint& other = mq == V ? U : V;
            return other.L[static_cast<size_t>(i)] == mq.L[static_cast<size_t>(i)];
        }
        KisinPoint a = construct_MQ(M, nu, en, i);
        KisinPoint b = construct_MQ(M, nu, en, j);
        bool end_ok = (a == U && b == V) || (a == V && b == U);
        return end_ok && (a.L[static_cast<size_t>(j)] == b.L[static_cast<size_t>(j)] ||
                          a.L[static_cast<size_t>(i)] == b.L[static_cast<size_t>(i)]);
    }
    return false;
}

} // namespace kisin
