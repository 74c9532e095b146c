#pragma once

#include <array>

#include "kisin/series.hpp"

namespace kisin {

using Vec2 = std::array<LaurentElement, 2>;

/// 2x2 matrix over F_q((u)), row-major. The basic transformation type for
/// lattices and phi-module data.
struct Mat2 {
    std::array<LaurentElement, 4> e;

    Mat2() = default;
    Mat2(LaurentElement a, LaurentElement b, LaurentElement c, LaurentElement d)
        : e{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    static Mat2 identity(const FieldSpec* s) {
        return Mat2(LaurentElement::one(s), LaurentElement::zero(s),
                    LaurentElement::zero(s), LaurentElement::one(s));
    }
    static Mat2 diag(LaurentElement x, LaurentElement y) {
        const FieldSpec* s = x.spec();
        return Mat2(std::move(x), LaurentElement::zero(s), LaurentElement::zero(s), std::move(y));
    }

    const FieldSpec* spec() const { return e[0].spec(); }

    const LaurentElement& a() const { return e[0]; }
    const LaurentElement& b() const { return e[1]; }
    const LaurentElement& c() const { return e[2]; }
    const LaurentElement& d() const { return e[3]; }

    LaurentElement det() const { return e[0] * e[3] - e[1] * e[2]; }
    /// Adjugate: adj(M) * M = det(M) * I. Exact.
    Mat2 adj() const { return Mat2(e[3], -e[1], -e[2], e[0]); }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3],
                    x.e[2] * y.e[0] + x.e[3] * y.e[2], x.e[2] * y.e[1] + x.e[3] * y.e[3]);
    }
    Vec2 operator*(const Vec2& v) const {
        return {e[0] * v[0] + e[1] * v[1], e[2] * v[0] + e[3] * v[1]};
    }

    /// Entrywise u -> u^N substitution.
    Mat2 substitute_upow(int N) const {
        return Mat2(e[0].substitute_upow(N), e[1].substitute_upow(N),
                    e[2].substitute_upow(N), e[3].substitute_upow(N));
    }

    Mat2 scaled(const LaurentElement& s) const {
        return Mat2(e[0] * s, e[1] * s, e[2] * s, e[3] * s);
    }

    friend bool operator==(const Mat2& x, const Mat2& y) { return x.e == y.e; }
};

} // namespace kisin
