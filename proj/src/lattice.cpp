#include "kisin/lattice.hpp"

#include <algorithm>

namespace kisin {

namespace {

// Valuation of an entry that may be exactly zero: nullopt for exact 0,
// InsufficientPrecision if unknown.
std::optional<int> entry_val(const LaurentElement& x) {
    if (x.is_zero()) return std::nullopt;
    return x.val(); // throws InsufficientPrecision when all known terms vanish
}

} // namespace

Lattice VertexClass::rep_with_det(int s) const {
    if (((s % 2) + 2) % 2 != parity())
        throw Error("VertexClass: no representative with det valuation of the wrong parity");
    int k = (s - d) / 2;
    return rep().scaled(k);
}

Lattice hnf(const Mat2& g) {
    const FieldSpec* s = g.spec();
    LaurentElement det = g.det();
    if (det.is_zero()) throw SingularMatrix("hnf: zero determinant");
    int vdet = det.val();

    // Pivot column: minimal valuation in the bottom row, ties to the left.
    std::optional<int> v0 = entry_val(g.c());
    std::optional<int> v1 = entry_val(g.d());
    if (!v0 && !v1) throw SingularMatrix("hnf: zero bottom row");
    int pivot;
    if (!v1 || (v0 && *v0 <= *v1)) pivot = 0;
    else pivot = 1;

    int b = pivot == 0 ? *v0 : *v1;
    int a = vdet - b;

    const LaurentElement& x = pivot == 0 ? g.a() : g.b(); // pivot top
    const LaurentElement& y = pivot == 0 ? g.c() : g.d(); // pivot bottom, val b

    // f = x / (y * u^{-b}) reduced below u^a. The pivot column (x, y) scaled by
    // the unit inverse has bottom entry exactly u^b; any other lattice vector
    // with that bottom entry differs by a multiple of (u^a, 0).
    LaurentElement f = LaurentElement::zero(s);
    if (!x.is_zero()) {
        int vx = x.val();
        if (vx < a) {
            int rel = a - vx;
            LaurentElement w = y.shifted(-b); // unit
            f = (x * w.inv(rel)).truncated(a);
            // exact by construction: every kept exponent is known
            f = LaurentElement::from_terms(s, f.terms());
        }
    }
    return Lattice(a, b, f);
}

std::pair<int, int> elementary_divisors(const Mat2& src_basis, const Mat2& dst_basis) {
    // T = dst^{-1} src = adj(dst) * src / det(dst); only valuations are needed,
    // so the division never happens.
    LaurentElement den = dst_basis.det();
    LaurentElement num = src_basis.det();
    if (den.is_zero() || num.is_zero()) throw SingularMatrix("elementary_divisors: singular basis");
    Mat2 N = dst_basis.adj() * src_basis;
    std::optional<int> minv;
    for (const auto& entry : N.e) {
        auto v = entry_val(entry);
        if (v && (!minv || *v < *minv)) minv = *v;
    }
    if (!minv) throw SingularMatrix("elementary_divisors: zero transition matrix");
    int vden = den.val();
    int b = *minv - vden;
    int vdetT = num.val() - vden;
    int a = vdetT - b;
    return {a, b}; // a >= b: v(det T) >= 2 * min-entry valuation
}

std::pair<int, int> elementary_divisors(const Lattice& src, const Lattice& dst) {
    return elementary_divisors(src.basis(), dst.basis());
}

VertexClass vertex_canonical(const Lattice& L) {
    return VertexClass(L.a - L.b, L.f.shifted(-L.b));
}

std::vector<VertexClass> neighbors(const VertexClass& v) {
    const FieldSpec* s = v.spec();
    Lattice L = v.rep();
    Mat2 B = L.basis();
    Vec2 c1{B.a(), B.c()};
    Vec2 c2{B.b(), B.d()};
    LaurentElement u1 = LaurentElement::upow(s, 1);

    std::vector<VertexClass> out;
    out.reserve(static_cast<size_t>(s->q()) + 1);
    // Index-q sublattices M with uL < M < L correspond to lines in L/uL:
    // (1:0) gives span{c1, u c2}; (z:1) gives span{z c1 + c2, u c1}.
    out.push_back(vertex_canonical(hnf(Mat2(c1[0], c2[0] * u1, c1[1], c2[1] * u1))));
    for (const auto& z : FieldElement::all(s)) {
        LaurentElement zl = LaurentElement::monomial(z, 0);
        out.push_back(vertex_canonical(
            hnf(Mat2(c1[0] * zl + c2[0], c1[0] * u1, c1[1] * zl + c2[1], c1[1] * u1))));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool lattice_contains(const Mat2& basis, const Vec2& w) {
    LaurentElement det = basis.det();
    if (det.is_zero()) throw SingularMatrix("lattice_contains: singular basis");
    int vdet = det.val();
    Vec2 n = basis.adj() * w;
    for (const auto& comp : n) {
        if (comp.is_zero()) continue;
        if (comp.val() < vdet) return false;
    }
    return true;
}

bool same_lattice(const Mat2& x, const Mat2& y) {
    return lattice_contains(x, Vec2{y.a(), y.c()}) && lattice_contains(x, Vec2{y.b(), y.d()}) &&
           lattice_contains(y, Vec2{x.a(), x.c()}) && lattice_contains(y, Vec2{x.b(), x.d()});
}

} // namespace kisin
