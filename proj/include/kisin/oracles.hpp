#pragma once

#include "kisin/connect.hpp"

namespace kisin {
/// Brute-force reference implementations, kept independent of the reductions
/// they cross-check. Tests and the CLI `check` suites recompute everything
/// here from definitions; nothing in this namespace calls two_ball_reduce,
/// fiber_reduce, enumerate_points or the frame-based geodesic.
namespace oracles {

/// Geodesic by stepwise descent: from v, repeatedly move to the unique
/// neighbor closer to w.
std::vector<VertexClass> geodesic_by_descent(const VertexClass& v, const VertexClass& w);

/// Membership from the definition: for each factor the divisor pair of M_i
/// with respect to the image of M_{i-1}, compared against nu in the dominance
/// order (equal determinant pairing, bounded root pairing).
bool member_by_definition(const PhiModule& M, const Cochar& nu, const KisinPoint& x);

/// All lattices with the given determinant valuation within the two balls.
std::vector<Lattice> two_ball_scan(const BuildingPoint& x1, const Rat& r1, const BuildingPoint& x2,
                                   const Rat& r2, int det_class);

/// Exhaustive scan of the chain variety's slot-2 projection (fixed ends,
/// free slots 2..s-1 over independent windows).
std::vector<Lattice> chain_scan_slot2(const PhiChain& chain, const Lattice& M1, const Lattice& Ms,
                                      const std::vector<int>& r, const std::vector<int>& m);

/// The full chain variety (tuples for slots 2..s-1), for fiber-connectivity
/// checks.
std::vector<std::vector<Lattice>> chain_scan(const PhiChain& chain, const Lattice& M1, const Lattice& Ms,
                                             const std::vector<int>& r, const std::vector<int>& m);

/// Exhaustive HNF-window enumeration of the variety: every slot ranges over
/// all det-class lattices within R_i + window_slack of P_i, each tuple tested
/// by member_by_definition. Precomputed distance tables keep the full scan
/// tractable; the tuple set scanned is the entire window product.
std::vector<KisinPoint> window_scan(const PhiModule& M, const Cochar& nu, const FieldSpec* field,
                                    int window_slack = 2);

} // namespace oracles
} // namespace kisin
