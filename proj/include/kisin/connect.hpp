#pragma once

#include <string>

#include "kisin/variety.hpp"

namespace kisin {

/// A ball of lattice classes with a fixed determinant valuation:
/// { lattices L : v(det L) = det_class, dist([L], center) <= radius }.
struct BallDescription {
    BuildingPoint center;
    Rat radius;
    int det_class = 0;

    /// All lattices in the ball, sorted canonically.
    std::vector<Lattice> points() const;
};

/// Reduce the intersection of two distance balls (with a det-class constraint)
/// to a single ball with the exact same point set, per the Schubert-variety
/// reduction: y on [x1,x2] at (d+r1-r2)/2 from x1, R = (r1+r2-d)/2, then the
/// vertex refinement on y's edge with the radius floored to the attainable
/// parity. nullopt when the intersection is empty.
std::optional<BallDescription> two_ball_reduce(const BuildingPoint& x1, const Rat& r1,
                                               const BuildingPoint& x2, const Rat& r2, int det_class);

/// A linear (non-cyclic) chain of semilinear maps: map j sends factor j to
/// factor j+1 by L -> mats[j] * phi(L), j = 0 .. len-1.
struct PhiChain {
    const FieldSpec* spec = nullptr;
    std::vector<Mat2> mats;

    PhiChain() = default;
    PhiChain(const FieldSpec* s, std::vector<Mat2> ms);
    int len() const { return static_cast<int>(mats.size()); }
    int p() const { return spec->p; }

    Lattice apply(int j, const Lattice& L) const;
    VertexClass apply(int j, const VertexClass& v) const;
    BuildingPoint apply(int j, const BuildingPoint& x) const;
};

/// Projection of x onto the image subtree of factor `j_from` inside factor
/// `j_from + count`: returns the target-side gate, its source-side preimage,
/// and the distance from x to the gate.
struct ImageProjection {
    BuildingPoint gate;    // point of the image subtree closest to x
    BuildingPoint preimage; // the source point mapping to gate
    Rat t;                 // dist(x, gate)
};
ImageProjection project_to_image(const PhiChain& chain, int j_from, int count, const BuildingPoint& x);

/// The slot-2 projection of the chain variety
///   { (M_2..M_{s-1}) : det M_i = u^{m_i}, dist(image of M_{i-1}, class M_i) <= r_i, i=2..s }
/// with fixed ends M_1, M_s, reduced to a single ball with the same F_q-point
/// set. chain.len() must be s-1 (maps 1->2, ..., s-1->s); r has entries
/// r_2..r_s, m has entries m_2..m_{s-1}. Requires s >= 3.
std::optional<BallDescription> fiber_reduce(const PhiChain& chain, const Lattice& M1, const Lattice& Ms,
                                            const std::vector<int>& r, const std::vector<int>& m);

/// The P^1-family through two lattices of equal determinant: q+1 lattices
/// chi(z), z in F_q plus infinity, with chi(0) = N1, chi(infinity) = N2, all
/// with the same determinant and at distance exactly d(N1,N2)/2 from the
/// midpoint of [N1, N2]. Built from a common frame (w1, w2):
///   chi(z) = span{ w1 + z u^{-h} w2', w2' }-style one-parameter family.
std::vector<Lattice> chi_family(const Lattice& N1, const Lattice& N2);

/// Smallest factor index i with P_i on [class(M_i), image of class(M_{i-1})].
/// Exists for every tuple when the module is simple; throws NoWitness.
int witness_index(const PhiModule& M, const FixedPoint& fp, const KisinPoint& x);

/// The connecting family of Prop-main-step: q+1 member tuples, tuple(0) = x,
/// slot i of tuple(infinity) = Ni. Preconditions: i is a witness index,
/// det Ni = det M_i, and the midpoint of [class Ni, class M_i] lies on
/// [P_i, class M_i]. When the pushed midpoint leaves [Q_{i+1}, class M_{i+1}]
/// only slot i varies; otherwise chained chi-families are built around the
/// cycle. Every returned tuple is membership-verified (MembershipLost).
std::vector<KisinPoint> mainstep_family(const PhiModule& M, const Cochar& nu, const Enumeration& en,
                                        const KisinPoint& x, int i, const Lattice& Ni);

/// The hub point M(Q_i): slot i is the Q_i lattice; later slots are filled
/// cyclically by the minimal-distance lattice on [Q_j, image of previous]
/// within r_j and det class s_j. Throws ConstraintEmpty when a slot has no
/// admissible lattice.
KisinPoint construct_MQ(const PhiModule& M, const Cochar& nu, const Enumeration& en, int i);

struct CertEdge {
    int u = 0, v = 0;
    std::string tag; // "single" | "chi" | "mq"
    // replay data: single -> differing slot; chi -> (witness slot, target); mq -> hub indices
    int slot = -1;
    std::optional<Lattice> target;
    std::optional<std::pair<int, int>> hubs;
};

struct CertGraph {
    std::vector<KisinPoint> nodes; // sorted canonically; ids are indices
    std::vector<CertEdge> edges;
};

struct GraphRules {
    bool single = true;
    bool chi = true;
    bool mq = true;
};

/// Certificate graph on the enumerated points. single: edges between points
/// differing in exactly one slot. chi: cliques over mainstep families seeded
/// from every point toward det-matched targets on its witness slot within the
/// radius bound. mq: edges through the M(Q_i) hubs, plus hub-hub edges when
/// the slot-coincidence lemma applies.
CertGraph build_graph(const PhiModule& M, const Cochar& nu, const Enumeration& en, const GraphRules& rules);

/// Connected components (sorted, deterministic union-find).
std::vector<std::vector<int>> components(const CertGraph& g);

/// Re-verify one edge's certificate from scratch.
bool replay_certificate(const PhiModule& M, const Cochar& nu, const Enumeration& en, const CertGraph& g,
                        const CertEdge& e);

} // namespace kisin
