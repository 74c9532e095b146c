#include "kisin/phimod.hpp"

#include <algorithm>
#include <set>

namespace kisin {

PhiModule::PhiModule(const FieldSpec* s, std::vector<Mat2> mats)
    : spec(s), n(static_cast<int>(mats.size())), A(std::move(mats)) {
    if (n < 1) throw Error("PhiModule: need at least one factor");
    for (const auto& m : A) {
        if (m.spec() != s) throw SpecMismatch("PhiModule: matrix over wrong field");
        if (m.det().is_zero()) throw SingularMatrix("PhiModule: A_i must be invertible over F_q((u))");
    }
}

PhiModule PhiModule::embedded_into(const FieldSpec* target) const {
    if (target == spec) return *this;
    std::vector<Mat2> mats;
    mats.reserve(A.size());
    for (const auto& m : A) {
        Mat2 out;
        for (int k = 0; k < 4; ++k) {
            std::vector<std::pair<int, FieldElement>> terms;
            for (const auto& t : m.e[static_cast<size_t>(k)].terms())
                terms.push_back({t.first, t.second.embed_into(target)});
            out.e[static_cast<size_t>(k)] = LaurentElement::from_terms(target, std::move(terms));
        }
        mats.push_back(std::move(out));
    }
    return PhiModule(target, std::move(mats));
}

PhiModule standard_module(int p, int m_ext, int n, int s, std::optional<FieldElement> alpha) {
    const FieldSpec* spec = FieldSpec::get(p, m_ext);
    FieldElement a = alpha.value_or(FieldElement::one(spec));
    if (a.spec() != spec) throw SpecMismatch("standard_module: alpha from wrong field");
    if (a.is_zero()) throw Error("standard_module: alpha must be nonzero");
    std::vector<Mat2> mats;
    mats.reserve(static_cast<size_t>(n));
    mats.push_back(Mat2(LaurentElement::zero(spec), LaurentElement::monomial(a, s),
                        LaurentElement::one(spec), LaurentElement::zero(spec)));
    for (int i = 1; i < n; ++i) mats.push_back(Mat2::identity(spec));
    return PhiModule(spec, std::move(mats));
}

std::optional<std::pair<int, FieldElement>> detect_standard(const PhiModule& M) {
    for (int i = 1; i < M.n; ++i)
        if (!(M.A[static_cast<size_t>(i)] == Mat2::identity(M.spec))) return std::nullopt;
    const Mat2& A1 = M.A[0];
    if (!A1.a().is_zero() || !A1.d().is_zero()) return std::nullopt;
    if (!(A1.c() == LaurentElement::one(M.spec))) return std::nullopt;
    if (A1.b().terms().size() != 1 || !A1.b().is_exact()) return std::nullopt;
    return std::make_pair(A1.b().terms()[0].first, A1.b().terms()[0].second);
}

Lattice phi_apply(const PhiModule& M, int i, const Lattice& L) {
    const Mat2& mat = M.A[static_cast<size_t>((i + 1) % M.n)];
    return hnf(mat * L.basis().substitute_upow(M.p()));
}

VertexClass phibar(const PhiModule& M, int i, const VertexClass& v) {
    return vertex_canonical(phi_apply(M, i, v.rep()));
}

BuildingPoint phibar(const PhiModule& M, int i, const BuildingPoint& x) {
    if (x.is_vertex()) return BuildingPoint::vertex(phibar(M, i, x.as_vertex()));
    VertexClass a = phibar(M, i, x.edge_v0());
    VertexClass b = phibar(M, i, x.edge_v1());
    return point_on_geodesic(a, b, x.offset() * Rat(M.p()));
}

Mat2 composite_matrix(const PhiModule& M, int f) {
    Mat2 C = M.A[static_cast<size_t>(((f % M.n) + M.n) % M.n)];
    int pk = 1;
    for (int j = 1; j < M.n; ++j) {
        pk *= M.p();
        int idx = (((f - j) % M.n) + M.n) % M.n;
        C = C * M.A[static_cast<size_t>(idx)].substitute_upow(pk);
    }
    return C;
}

namespace {

BuildingPoint apply_cycle(const PhiModule& M, int start, BuildingPoint x) {
    for (int j = 0; j < M.n; ++j) x = phibar(M, (start + j) % M.n, x);
    return x;
}

std::optional<int> maybe_val(const LaurentElement& x) {
    if (x.is_zero()) return std::nullopt;
    return x.val();
}

// Stable-line coefficient search for one extension field and one leading
// valuation w. Solves the residual of
//   G(f) = f*C11 + C12*f*phit(f) - C21 - C22*phit(f)
// one coefficient at a time; contact exponents are strictly increasing in the
// coefficient index, so pruning is sound.
struct LineSearch {
    const FieldSpec* s;
    const Mat2& C;
    int qt; // p^n
    int w;
    int prec;
    int ext_degree;
    std::vector<StableLine>& out;
    bool& hit_depth_bound;
    long long nodes = 0;
    static constexpr long long kNodeCap = 200000;
    static constexpr size_t kLineCap = 64;

    LaurentElement phit(const LaurentElement& x) const { return x.substitute_upow(qt); }

    LaurentElement residual(const LaurentElement& f) const {
        LaurentElement pf = phit(f);
        return f * C.a() + C.b() * f * pf - C.c() - C.d() * pf;
    }

    int contact(int k) const {
        long long mu = INT32_MAX;
        if (!C.a().is_zero()) mu = std::min(mu, static_cast<long long>(k) + C.a().val());
        if (!C.b().is_zero())
            mu = std::min(mu, static_cast<long long>(k) + static_cast<long long>(qt) * w + C.b().val());
        if (!C.d().is_zero()) mu = std::min(mu, static_cast<long long>(qt) * k + C.d().val());
        return static_cast<int>(mu);
    }

    void run(const LaurentElement& f, int k) {
        if (++nodes > kNodeCap) { hit_depth_bound = true; return; }
        LaurentElement R = residual(f);
        if (R.is_zero() && !f.no_known_terms() && out.size() < kLineCap) {
            bool dup = false;
            for (const auto& l : out)
                if (!l.at_infinity && l.slope == f) { dup = true; break; }
            if (!dup) out.push_back(StableLine{f, false, ext_degree, true});
        }
        if (k - w >= prec) {
            if (!R.is_zero()) hit_depth_bound = true;
            return;
        }
        int mu = contact(k);
        if (!R.is_zero() && R.val() < mu) return; // nothing at index >= k reaches it

        // Coefficient equation at exponent mu: A0 + B*c + D*c^2 = 0.
        FieldElement A0 = R.is_zero() ? FieldElement::zero(s) : R.coeff(mu);
        FieldElement B = FieldElement::zero(s);
        if (!C.a().is_zero()) B = B + C.a().coeff(mu - k);
        if (!C.b().is_zero()) {
            LaurentElement t1 = C.b() * phit(f);
            B = B + t1.coeff(mu - k);
            LaurentElement t2 = f * C.b();
            long long idx = static_cast<long long>(mu) - static_cast<long long>(qt) * k;
            if (idx >= INT32_MIN && idx <= INT32_MAX) B = B + t2.coeff(static_cast<int>(idx));
        }
        if (!C.d().is_zero()) {
            long long idx = static_cast<long long>(mu) - static_cast<long long>(qt) * k;
            if (idx >= INT32_MIN && idx <= INT32_MAX) B = B - C.d().coeff(static_cast<int>(idx));
        }
        FieldElement D = FieldElement::zero(s);
        if (!C.b().is_zero()) {
            long long idx = static_cast<long long>(mu) - static_cast<long long>(1 + qt) * k;
            if (idx >= INT32_MIN && idx <= INT32_MAX) D = D + C.b().coeff(static_cast<int>(idx));
        }

        for (const auto& c : FieldElement::all(s)) {
            if (k == w && c.is_zero()) continue;
            if (!(A0 + B * c + D * c * c).is_zero()) continue;
            LaurentElement fn = c.is_zero() ? f : f + LaurentElement::monomial(c, k);
            run(fn, k + 1);
        }
    }
};

std::vector<int> newton_candidates(const Mat2& C, int qt) {
    struct Term { long long slope, icept; };
    std::vector<Term> terms;
    if (auto v = maybe_val(C.a())) terms.push_back({1, *v});
    if (auto v = maybe_val(C.b())) terms.push_back({1 + qt, *v});
    if (auto v = maybe_val(C.c())) terms.push_back({0, *v});
    if (auto v = maybe_val(C.d())) terms.push_back({qt, *v});
    std::set<int> ws;
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = i + 1; j < terms.size(); ++j) {
            if (terms[i].slope == terms[j].slope) continue;
            long long num = terms[j].icept - terms[i].icept;
            long long den = terms[i].slope - terms[j].slope;
            if (num % den != 0) continue;
            long long w = num / den;
            // minimum must be achieved at least twice at w
            long long m = INT64_MAX;
            int count = 0;
            for (const auto& t : terms) {
                long long val = t.slope * w + t.icept;
                if (val < m) { m = val; count = 1; }
                else if (val == m) ++count;
            }
            if (count >= 2 && terms[i].slope * w + terms[i].icept == m)
                ws.insert(static_cast<int>(w));
        }
    return {ws.begin(), ws.end()};
}

} // namespace

StableLineReport stable_lines(const PhiModule& M, int prec, int max_ext) {
    if (prec < 1 || max_ext < 1) throw Error("stable_lines: bounds must be >= 1");
    StableLineReport rep;
    rep.prec = prec;
    rep.max_ext = max_ext;

    Mat2 C0 = composite_matrix(M, 0);
    int qt = 1;
    for (int j = 0; j < M.n; ++j) qt *= M.p();

    // The coordinate axes, checked once (extension-independent).
    if (C0.c().is_zero())
        rep.lines.push_back(StableLine{LaurentElement::zero(M.spec), false, 1, true});
    if (C0.b().is_zero())
        rep.lines.push_back(StableLine{LaurentElement::zero(M.spec), true, 1, true});

    std::vector<int> cands = newton_candidates(C0, qt);
    bool exhausted = true;
    if (!cands.empty() && rep.lines.empty()) {
        for (int e = 1; e <= max_ext; ++e) {
            const FieldSpec* ext;
            try {
                ext = FieldSpec::get(M.spec->p, M.spec->m * e);
            } catch (const Error&) {
                exhausted = false; // extension beyond the field table, not searched
                break;
            }
            PhiModule Me = M.embedded_into(ext);
            Mat2 Ce = composite_matrix(Me, 0);
            bool hit_bound = false;
            for (int w : cands) {
                LineSearch ls{ext, Ce, qt, w, prec, e, rep.lines, hit_bound};
                ls.run(LaurentElement::zero(ext), w);
            }
            if (hit_bound) exhausted = false;
            if (!rep.lines.empty()) break; // a witness at the smallest extension suffices
        }
    }
    rep.search_exhausted = rep.lines.empty() ? exhausted : true;
    return rep;
}

SimplicityResult is_simple(const PhiModule& M, int prec, int max_ext) {
    StableLineReport rep = stable_lines(M, prec, max_ext);
    SimplicityResult res;
    res.prec = prec;
    res.max_ext = max_ext;
    if (rep.found()) {
        res.status = Simplicity::NotSimple;
        res.witness = rep.lines.front();
        return res;
    }
    if (auto std_form = detect_standard(M)) {
        int qt = 1;
        for (int j = 0; j < M.n; ++j) qt *= M.p();
        if (std_form->first % (qt + 1) != 0) {
            res.status = Simplicity::Simple;
            return res;
        }
    }
    res.status = Simplicity::UnknownUpToBounds;
    return res;
}

FixedPoint fixed_point(const PhiModule& M) {
    const FieldSpec* s = M.spec;
    VertexClass base = VertexClass::base(s);
    Lattice L = base.rep();
    for (int i = 0; i < M.n; ++i) L = phi_apply(M, i, L);
    VertexClass img = vertex_canonical(L);

    long long qt1 = 1;
    for (int j = 0; j < M.n; ++j) qt1 *= M.p();
    qt1 += 1;

    int D = dist(base, img);
    BuildingPoint P0 = point_on_geodesic(base, img, Rat(D, qt1));

    FixedPoint fp;
    fp.P.reserve(static_cast<size_t>(M.n));
    fp.P.push_back(P0);
    for (int i = 0; i + 1 < M.n; ++i) fp.P.push_back(phibar(M, i, fp.P.back()));

    // Exact closure and per-factor fixedness; failure signals the input
    // violates the simplicity hypothesis (or is degenerate).
    if (!(phibar(M, M.n - 1, fp.P.back()) == fp.P[0]))
        throw FixedPointInconsistent("fixed_point: cycle does not close");
    for (int i = 0; i < M.n; ++i)
        if (!(apply_cycle(M, i, fp.P[static_cast<size_t>(i)]) == fp.P[static_cast<size_t>(i)]))
            throw FixedPointInconsistent("fixed_point: P_" + std::to_string(i + 1) +
                                         " not fixed by its factor cycle");
    return fp;
}

} // namespace kisin
