#include "kisin/variety.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace kisin {

std::optional<std::vector<int>> solve_det_classes(const PhiModule& M, const Cochar& nu) {
    if (nu.n() != M.n) throw Error("solve_det_classes: cocharacter arity mismatch");
    int n = M.n;
    long long p = M.p();
    // Unroll s_0 = c_0 + p c_{n-1} + p^2 c_{n-2} + ... + p^{n-1} c_1 + p^n s_0.
    std::vector<long long> c(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = nu.m(i) + M.det_val(i);
    long long acc = 0;
    long long pk = 1;
    for (int j = 0; j < n; ++j) {
        acc += pk * c[static_cast<size_t>(((-j % n) + n) % n)];
        pk *= p;
    }
    long long den = 1 - pk; // 1 - p^n, negative
    if (acc % den != 0) return std::nullopt;
    std::vector<int> s(static_cast<size_t>(n));
    s[0] = static_cast<int>(acc / den);
    for (int i = 1; i < n; ++i)
        s[static_cast<size_t>(i)] = static_cast<int>(c[static_cast<size_t>(i)] + p * s[static_cast<size_t>(i - 1)]);
    return s;
}

MemberResult is_member(const PhiModule& M0, const Cochar& nu, const KisinPoint& x) {
    if (nu.n() != M0.n || static_cast<int>(x.L.size()) != M0.n)
        throw Error("is_member: arity mismatch");
    const PhiModule M = M0.embedded_into(x.L[0].spec());
    MemberResult res;
    res.member = true;
    for (int i = 0; i < M.n; ++i) {
        int prev = (i + M.n - 1) % M.n;
        Lattice img = phi_apply(M, prev, x.L[static_cast<size_t>(prev)]);

        // Divisor-profile criterion: divisors of M_i with respect to the image.
        auto [a, b] = elementary_divisors(x.L[static_cast<size_t>(i)], img);
        bool div_ok = (a + b == nu.m(i)) && (a - b <= nu.r(i));

        // Building-form criterion: tree distance plus determinant identity,
        // through the canonical class representatives.
        int d = dist(vertex_canonical(x.L[static_cast<size_t>(i)]), vertex_canonical(img));
        bool bld_ok = (d <= nu.r(i)) && (x.L[static_cast<size_t>(i)].det_val() == nu.m(i) + img.det_val());

        if (div_ok != bld_ok)
            throw InternalDisagreement("is_member: divisor and building criteria disagree at factor " +
                                       std::to_string(i + 1));
        if (!div_ok) {
            res.member = false;
            res.profile.clear();
            res.reason = "factor " + std::to_string(i + 1) + ": divisors (" + std::to_string(a) + "," +
                         std::to_string(b) + ") vs (m,r)=(" + std::to_string(nu.m(i)) + "," +
                         std::to_string(nu.r(i)) + ")";
            return res;
        }
        res.profile.push_back({a, b});
    }
    return res;
}

std::vector<Rat> radius_bound(const PhiModule& M, const Cochar& nu) {
    if (nu.n() != M.n) throw Error("radius_bound: cocharacter arity mismatch");
    int n = M.n;
    long long p = M.p();
    long long pn = 1;
    for (int j = 0; j < n; ++j) pn *= p;
    std::vector<Rat> R(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        long long num = 0;
        long long pw = pn;
        for (int j = 1; j <= n; ++j) {
            pw /= p; // p^{n-j}
            num += pw * nu.r((i + j) % n);
        }
        R[static_cast<size_t>(i)] = Rat(num, pn - 1);
    }
    return R;
}

VertexClass nearest_Q(const BuildingPoint& P_i, int s_i) {
    if (P_i.is_vertex())
        throw PreconditionViolated("nearest_Q: fixed-point coordinate is a vertex");
    int want = ((s_i % 2) + 2) % 2;
    bool m0 = P_i.edge_v0().parity() == want;
    bool m1 = P_i.edge_v1().parity() == want;
    if (m0 == m1) throw AmbiguousQ("nearest_Q: parity tie"); // adjacent parities differ; unreachable
    return m0 ? P_i.edge_v0() : P_i.edge_v1();
}

namespace {

// Candidates for one slot: classes of det-class parity within `radius` of
// `around`, also within `R + slack` of the fixed-point coordinate.
std::vector<VertexClass> slot_candidates(const BuildingPoint& around, const Rat& radius, int parity,
                                         const BuildingPoint& P, const Rat& R_bound) {
    std::vector<VertexClass> out;
    for (auto& v : ball_vertices(around, radius)) {
        if (v.parity() != parity) continue;
        if (dist(BuildingPoint::vertex(v), P) > R_bound) continue;
        out.push_back(std::move(v));
    }
    return out;
}

void dfs_extend(const PhiModule& M, const Cochar& nu, const std::vector<int>& s,
                const std::vector<Rat>& Rb, const Rat& slack, const FixedPoint& fp,
                std::vector<Lattice>& chain, std::vector<KisinPoint>& out) {
    int i = static_cast<int>(chain.size()) - 1;
    if (i + 1 == M.n) {
        // Cyclic constraint back into slot 1 (det identity holds by det class).
        Lattice img = phi_apply(M, M.n - 1, chain.back());
        if (dist(vertex_canonical(img), vertex_canonical(chain[0])) > nu.r(0)) return;
        KisinPoint pt{chain};
        MemberResult mr = is_member(M, nu, pt); // inline biconditional assertion
        if (!mr.member)
            throw InternalDisagreement("enumerate_points: propagated candidate fails is_member: " + mr.reason);
        out.push_back(std::move(pt));
        return;
    }
    Lattice img = phi_apply(M, i, chain.back());
    BuildingPoint center = BuildingPoint::vertex(vertex_canonical(img));
    int next = i + 1;
    for (auto& v : slot_candidates(center, Rat(nu.r(next)), ((s[static_cast<size_t>(next)] % 2) + 2) % 2,
                                   fp.P[static_cast<size_t>(next)], Rb[static_cast<size_t>(next)] + slack)) {
        Lattice cand = v.rep_with_det(s[static_cast<size_t>(next)]);
        // Inline biconditional: the ball filter (building form) admitted this
        // candidate, so the divisor profile must admit it too.
        auto [a, b] = elementary_divisors(cand, img);
        if (a + b != nu.m(next) || a - b > nu.r(next))
            throw InternalDisagreement("enumerate_points: ball candidate rejected by divisor profile");
        chain.push_back(std::move(cand));
        dfs_extend(M, nu, s, Rb, slack, fp, chain, out);
        chain.pop_back();
    }
}

} // namespace

Enumeration enumerate_points(const PhiModule& M0, const Cochar& nu, const FieldSpec* field,
                             int radius_slack, int jobs) {
    if (field->p != M0.spec->p)
        throw SpecMismatch("enumerate_points: enumeration field has wrong characteristic");
    PhiModule M = M0.embedded_into(field);

    Enumeration en;
    auto s = solve_det_classes(M, nu);
    if (!s) throw ConstraintEmpty("enumerate_points: determinant-class system has no integer solution");
    en.s = *s;
    en.R = radius_bound(M, nu);
    en.fp = fixed_point(M);

    Rat slack(radius_slack);
    std::vector<VertexClass> seeds =
        slot_candidates(en.fp.P[0], en.R[0] + slack, ((en.s[0] % 2) + 2) % 2, en.fp.P[0], en.R[0] + slack);

    auto run_range = [&](size_t lo, size_t hi, std::vector<KisinPoint>& sink) {
        std::vector<Lattice> chain;
        for (size_t k = lo; k < hi; ++k) {
            chain.clear();
            chain.push_back(seeds[k].rep_with_det(en.s[0]));
            dfs_extend(M, nu, en.s, en.R, slack, en.fp, chain, sink);
        }
    };

    if (jobs <= 1 || seeds.size() < 2) {
        run_range(0, seeds.size(), en.points);
    } else {
        size_t nw = std::min<size_t>(static_cast<size_t>(jobs), seeds.size());
        std::vector<std::vector<KisinPoint>> parts(nw);
        std::vector<std::thread> workers;
        for (size_t w = 0; w < nw; ++w) {
            size_t lo = seeds.size() * w / nw;
            size_t hi = seeds.size() * (w + 1) / nw;
            workers.emplace_back([&, lo, hi, w] { run_range(lo, hi, parts[w]); });
        }
        for (auto& t : workers) t.join();
        for (auto& part : parts)
            en.points.insert(en.points.end(), std::make_move_iterator(part.begin()),
                             std::make_move_iterator(part.end()));
    }
    std::sort(en.points.begin(), en.points.end());
    return en;
}

} // namespace kisin
