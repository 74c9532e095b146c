#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kisin/gf.hpp"

namespace kisin {

/// Laurent polynomial over F_q with exact finite support, optionally carrying
/// a truncation horizon H ("terms of exponent >= H unknown"). Arithmetic on
/// exact inputs is exact; horizons only enter through inv() and propagate
/// conservatively. Stored terms are sorted by exponent, never zero, and all
/// below the horizon when one is present.
class LaurentElement {
public:
    LaurentElement() : spec_(nullptr) {}
    explicit LaurentElement(const FieldSpec* spec) : spec_(spec) {}

    static LaurentElement zero(const FieldSpec* s) { return LaurentElement(s); }
    static LaurentElement one(const FieldSpec* s) { return monomial(FieldElement::one(s), 0); }
    static LaurentElement upow(const FieldSpec* s, int e) { return monomial(FieldElement::one(s), e); }
    static LaurentElement monomial(const FieldElement& c, int e);
    /// Exact element from (exponent, coefficient) pairs; merges duplicates.
    static LaurentElement from_terms(const FieldSpec* s,
                                     std::vector<std::pair<int, FieldElement>> terms,
                                     std::optional<int> horizon = std::nullopt);

    const FieldSpec* spec() const { return spec_; }
    const std::vector<std::pair<int, FieldElement>>& terms() const { return terms_; }
    std::optional<int> horizon() const { return horizon_; }

    bool is_exact() const { return !horizon_.has_value(); }
    /// True iff exactly zero (no terms, no horizon).
    bool is_zero() const { return terms_.empty() && is_exact(); }
    /// True iff no known nonzero term (may still hide terms past the horizon).
    bool no_known_terms() const { return terms_.empty(); }

    /// Minimal exponent with nonzero coefficient.
    /// Throws ZeroValuation on exact 0, InsufficientPrecision when all known
    /// coefficients vanish but a horizon prevents certainty.
    int val() const;

    FieldElement coeff(int e) const;           // 0 for absent exponents below horizon
    FieldElement leading_coeff() const { return coeff(val()); }

    friend LaurentElement operator+(const LaurentElement& a, const LaurentElement& b);
    friend LaurentElement operator-(const LaurentElement& a, const LaurentElement& b);
    friend LaurentElement operator*(const LaurentElement& a, const LaurentElement& b);
    LaurentElement operator-() const;
    LaurentElement operator*(const FieldElement& c) const;

    /// Multiply by u^k (exact exponent shift).
    LaurentElement shifted(int k) const;

    /// u -> u^N substitution, N >= 1. N = p is the Frobenius companion phi;
    /// N = p^n is the composite phi-tilde. Horizon H maps to N*H.
    LaurentElement substitute_upow(int N) const;

    /// Inverse to relative precision prec: result has horizon -val() + prec and
    /// self * result agrees with 1 on all known exponents.
    LaurentElement inv(int prec) const;

    /// Drop all terms with exponent >= h and record the horizon min(h, old).
    LaurentElement truncated(int h) const;

    /// Exponents >= h of this element are known (no horizon, or horizon >= h).
    bool known_below(int h) const { return is_exact() || *horizon_ >= h; }

    /// Representation equality (terms and horizon).
    friend bool operator==(const LaurentElement& a, const LaurentElement& b) {
        return a.spec_ == b.spec_ && a.terms_ == b.terms_ && a.horizon_ == b.horizon_;
    }
    friend bool operator!=(const LaurentElement& a, const LaurentElement& b) { return !(a == b); }
    friend bool operator<(const LaurentElement& a, const LaurentElement& b); // deterministic order

    /// Do a and b agree on all exponents < h?
    static bool agree_below(const LaurentElement& a, const LaurentElement& b, int h);

    std::string str() const;

private:
    void normalize();
    static void check_same(const LaurentElement& a, const LaurentElement& b);

    const FieldSpec* spec_;
    std::vector<std::pair<int, FieldElement>> terms_;
    std::optional<int> horizon_;
};

/// Default relative precision for inversions whose consumers do not know a
/// sharper bound. All desk-scale instances need far less; shortfalls surface
/// as InsufficientPrecision rather than wrong answers.
inline constexpr int kDefaultPrec = 64;

} // namespace kisin
