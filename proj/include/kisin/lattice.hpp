#pragma once

#include <utility>
#include <vector>

#include "kisin/mat2.hpp"

namespace kisin {

/// F_q[[u]]-lattice in F_q((u))^2, stored in Hermite canonical form: the
/// column span of [[u^a, f], [0, u^b]] with f supported on exponents < a
/// (possibly negative). The triple (a, b, f) is unique per lattice.
struct Lattice {
    int a = 0;
    int b = 0;
    LaurentElement f;

    Lattice() = default;
    Lattice(int a_, int b_, LaurentElement f_) : a(a_), b(b_), f(std::move(f_)) {}

    static Lattice standard(const FieldSpec* s) { return Lattice(0, 0, LaurentElement::zero(s)); }

    const FieldSpec* spec() const { return f.spec(); }
    int det_val() const { return a + b; }

    Mat2 basis() const {
        const FieldSpec* s = spec();
        return Mat2(LaurentElement::upow(s, a), f, LaurentElement::zero(s), LaurentElement::upow(s, b));
    }

    /// u^k * this, still canonical.
    Lattice scaled(int k) const { return Lattice(a + k, b + k, f.shifted(k)); }

    friend bool operator==(const Lattice& x, const Lattice& y) {
        return x.a == y.a && x.b == y.b && x.f == y.f;
    }
    friend bool operator!=(const Lattice& x, const Lattice& y) { return !(x == y); }
    friend bool operator<(const Lattice& x, const Lattice& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.f < y.f;
    }
};

/// Homothety class of a lattice: the canonical representative with b = 0,
/// i.e. the class of span{u^d e1, f e1 + e2} with f supported below d.
/// d may be negative (the class need not contain a representative inside
/// the standard lattice on the e1 side); (0, 0) is the base vertex.
struct VertexClass {
    int d = 0;
    LaurentElement f;

    VertexClass() = default;
    VertexClass(int d_, LaurentElement f_) : d(d_), f(std::move(f_)) {}

    static VertexClass base(const FieldSpec* s) { return VertexClass(0, LaurentElement::zero(s)); }

    const FieldSpec* spec() const { return f.spec(); }

    /// Det-valuation parity shared by every lattice in the class.
    int parity() const { return ((d % 2) + 2) % 2; }

    /// The representative lattice with det valuation exactly s
    /// (requires s = d mod 2).
    Lattice rep_with_det(int s) const;
    Lattice rep() const { return Lattice(d, 0, f); }

    friend bool operator==(const VertexClass& x, const VertexClass& y) {
        return x.d == y.d && x.f == y.f;
    }
    friend bool operator!=(const VertexClass& x, const VertexClass& y) { return !(x == y); }
    friend bool operator<(const VertexClass& x, const VertexClass& y) {
        if (x.d != y.d) return x.d < y.d;
        return x.f < y.f;
    }
};

/// Hermite canonical form of the column span of g over F_q[[u]].
/// Throws SingularMatrix when det g = 0, InsufficientPrecision when entry
/// horizons are too short to pin down the canonical triple.
Lattice hnf(const Mat2& g);

/// Smith normal form exponents (a >= b) of dst_basis^{-1} * src_basis over
/// F_q[[u]]: src = span{u^a w1, u^b w2} for some basis (w1, w2) of dst.
std::pair<int, int> elementary_divisors(const Lattice& src, const Lattice& dst);
std::pair<int, int> elementary_divisors(const Mat2& src_basis, const Mat2& dst_basis);

/// Canonical homothety-class form of L.
VertexClass vertex_canonical(const Lattice& L);

/// The q+1 classes at tree distance 1 from v, sorted canonically.
std::vector<VertexClass> neighbors(const VertexClass& v);

/// Exact membership test: does the column span of `basis` contain w?
bool lattice_contains(const Mat2& basis, const Vec2& w);

/// Do two bases span the same lattice? (Both column spans, exact.)
bool same_lattice(const Mat2& x, const Mat2& y);

} // namespace kisin
