#pragma once

#include "kisin/phimod.hpp"

namespace kisin {

/// Dominant cocharacter data: one integer pair (a_i, b_i) with a_i >= b_i per
/// factor. Only r_i = a_i - b_i and m_i = a_i + b_i enter the computations.
struct Cochar {
    std::vector<std::pair<int, int>> pairs;

    Cochar() = default;
    explicit Cochar(std::vector<std::pair<int, int>> ps) : pairs(std::move(ps)) {
        for (const auto& [a, b] : pairs)
            if (a < b) throw Error("Cochar: dominance requires a_i >= b_i");
    }

    int n() const { return static_cast<int>(pairs.size()); }
    int r(int i) const { return pairs[static_cast<size_t>(i)].first - pairs[static_cast<size_t>(i)].second; }
    int m(int i) const { return pairs[static_cast<size_t>(i)].first + pairs[static_cast<size_t>(i)].second; }
};

/// An n-tuple of lattices, one per factor: a candidate point of the variety.
struct KisinPoint {
    std::vector<Lattice> L;

    friend bool operator==(const KisinPoint& x, const KisinPoint& y) { return x.L == y.L; }
    friend bool operator<(const KisinPoint& x, const KisinPoint& y) { return x.L < y.L; }
};

/// Solve the cyclic determinant-class system s_i = m_i + val(det A_i) + p*s_{i-1}
/// (indices mod n). Returns the unique solution when integral, nullopt when the
/// variety has no points in any determinant class.
std::optional<std::vector<int>> solve_det_classes(const PhiModule& M, const Cochar& nu);

struct MemberResult {
    bool member = false;
    std::vector<std::pair<int, int>> profile; // divisor pairs (a_i, b_i), when member
    std::string reason;                       // first violated condition, when not
};

/// Membership test. For each factor i, the divisor pair of M_i with respect to
/// the image of M_{i-1} must satisfy a_i + b_i = m_i and a_i - b_i <= r_i.
/// The equivalent building-form criterion (tree distance <= r_i plus the
/// determinant identity) is evaluated independently as well; a disagreement
/// throws InternalDisagreement (bug trap).
MemberResult is_member(const PhiModule& M, const Cochar& nu, const KisinPoint& x);

/// Per-factor radii R_i with dist(class(M_i), P_i) <= R_i for every member
/// point: chasing d >= p*d' - r around the cycle gives
/// R_i = (sum_j p^{n-j} r_{i+j}) / (p^n - 1), indices cyclic.
std::vector<Rat> radius_bound(const PhiModule& M, const Cochar& nu);

/// The endpoint of P_i's edge whose class parity matches the determinant
/// class s_i; unique since adjacent vertices have opposite parities.
/// Requires P_i to be an interior point.
VertexClass nearest_Q(const BuildingPoint& P_i, int s_i);

struct Enumeration {
    std::vector<int> s;
    std::vector<Rat> R;
    FixedPoint fp;
    std::vector<KisinPoint> points; // sorted canonically
};

/// All F_q-points of the variety, by constraint propagation: seeds for the
/// first slot are the det-class-s_1 vertices within R_1 of P_1; each later
/// slot ranges over the r_{i+1}-ball around the image of the previous slot
/// (pruned by the R-bound); the cyclic constraint filters at the end. Every
/// output passes is_member (the biconditional assertion runs inline).
/// `field` must have the module's characteristic; the module coefficients are
/// embedded when the field is an extension. jobs > 1 splits the seed list
/// over threads (the result is merged and sorted, so output is identical).
Enumeration enumerate_points(const PhiModule& M, const Cochar& nu, const FieldSpec* field,
                             int radius_slack = 0, int jobs = 1);

} // namespace kisin
