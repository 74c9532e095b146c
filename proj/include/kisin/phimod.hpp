#pragma once

#include <optional>
#include <vector>

#include "kisin/tree.hpp"

namespace kisin {

/// The datum A = (A_1, ..., A_n) of a rank-2 etale phi-module split into n
/// factors. Indexing convention (fixed throughout): the semilinear map out of
/// factor i (0-based) lands in factor (i+1) mod n and acts as
///     L  |->  A_{(i+1) mod n} * phi(L),
/// phi the u -> u^p substitution (identity on coefficients). Around the full
/// cycle the composite on factor 0 is C * phi^n with
/// C = A_0 * phi(A_{n-1}) * phi^2(A_{n-2}) * ... * phi^{n-1}(A_1).
struct PhiModule {
    const FieldSpec* spec = nullptr;
    int n = 0;
    std::vector<Mat2> A;

    PhiModule() = default;
    PhiModule(const FieldSpec* s, std::vector<Mat2> mats);

    int p() const { return spec->p; }
    /// Valuation of det A_i (0-based, A[0] = A_1).
    int det_val(int i) const { return A[static_cast<size_t>(i)].det().val(); }

    /// Re-express the module over a larger coefficient field.
    PhiModule embedded_into(const FieldSpec* target) const;
};

/// The standard form: A_1 = [[0, alpha u^s], [1, 0]], A_i = I for i >= 2, so
/// the composite around the cycle acts by b1 -> b2, b2 -> alpha u^s b1.
PhiModule standard_module(int p, int m_ext, int n, int s, std::optional<FieldElement> alpha = std::nullopt);

/// Recognize a standard-form module; returns (s, alpha) when it matches.
std::optional<std::pair<int, FieldElement>> detect_standard(const PhiModule& M);

/// Image lattice of L (living in factor i) under the map into factor i+1.
Lattice phi_apply(const PhiModule& M, int i, const Lattice& L);

VertexClass phibar(const PhiModule& M, int i, const VertexClass& v);
/// Building map: vertices move by phi_apply; the interior point (v,w,t) moves
/// to the point at distance p*t from phibar(v) along the length-p geodesic.
BuildingPoint phibar(const PhiModule& M, int i, const BuildingPoint& x);

/// Composite matrix C_f with (full cycle ending at factor f) = C_f * phi^n.
Mat2 composite_matrix(const PhiModule& M, int f);

/// A slope found by the stable-line search: the line span{(1, f)}, or the
/// second coordinate axis when at_infinity is set (slope "infinity").
struct StableLine {
    LaurentElement slope;
    bool at_infinity = false;
    int ext_degree = 1;   // coefficient extension where the line was found
    bool exact = true;    // residual vanished identically, not just to prec
};

struct StableLineReport {
    std::vector<StableLine> lines;
    bool search_exhausted = false; // all candidates eliminated within bounds
    int prec = 0;
    int max_ext = 0;
    bool found() const { return !lines.empty(); }
};

/// Search for lines stable under the cycle composite on factor 0, over
/// coefficient extensions of degree <= max_ext, solving the cross-product
/// equation f*(C11 + C12 phit(f)) = C21 + C22 phit(f) coefficient by
/// coefficient to relative precision prec (phit: u -> u^{p^n}).
StableLineReport stable_lines(const PhiModule& M, int prec, int max_ext);

enum class Simplicity { Simple, NotSimple, UnknownUpToBounds };

struct SimplicityResult {
    Simplicity status;
    std::optional<StableLine> witness; // for NotSimple
    int prec = 0;
    int max_ext = 0;
};

/// NotSimple iff the stable-line search finds a line; Simple is certified
/// only for standard-form modules with (p^n + 1) not dividing s (no stable
/// line exists over any coefficient extension, by the valuation balance of
/// the cross-product equation); otherwise UnknownUpToBounds.
SimplicityResult is_simple(const PhiModule& M, int prec = kDefaultPrec, int max_ext = 4);

/// The tuple of per-factor building points fixed by the cycle.
struct FixedPoint {
    std::vector<BuildingPoint> P;
};

/// Computes P_1 on [base, cycle(base)] at parameter dist/(p^n + 1), pushes it
/// around the factors, and verifies exactly that the tuple closes up and that
/// each P_i is fixed by its factor cycle. Throws FixedPointInconsistent when
/// the checks fail (non-simple or degenerate input).
FixedPoint fixed_point(const PhiModule& M);

} // namespace kisin
