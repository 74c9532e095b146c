#include "kisin/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace kisin {
namespace oracles {

std::vector<VertexClass> geodesic_by_descent(const VertexClass& v, const VertexClass& w) {
    std::vector<VertexClass> path{v};
    VertexClass cur = v;
    while (!(cur == w)) {
        int d = dist(cur, w);
        bool moved = false;
        for (const auto& nb : neighbors(cur)) {
            if (dist(nb, w) == d - 1) {
                path.push_back(nb);
                cur = nb;
                moved = true;
                break;
            }
        }
        if (!moved) throw Error("geodesic_by_descent: no descending neighbor"); // unreachable
    }
    return path;
}

bool member_by_definition(const PhiModule& M0, const Cochar& nu, const KisinPoint& x) {
    const PhiModule M = M0.embedded_into(x.L[0].spec());
    for (int i = 0; i < M.n; ++i) {
        int prev = (i + M.n - 1) % M.n;
        // Image of the previous slot, from the definition of the map.
        Mat2 img = M.A[static_cast<size_t>(i)] *
                   x.L[static_cast<size_t>(prev)].basis().substitute_upow(M.p());
        // Divisor pair of M_i with respect to the image, via the raw bases.
        auto [a, b] = elementary_divisors(x.L[static_cast<size_t>(i)].basis(), img);
        // Dominance comparison against nu_i = (alpha_i, beta_i).
        int alpha = nu.pairs[static_cast<size_t>(i)].first;
        int beta = nu.pairs[static_cast<size_t>(i)].second;
        if (a + b != alpha + beta) return false;
        if (a > alpha) return false;
    }
    return true;
}

std::vector<Lattice> two_ball_scan(const BuildingPoint& x1, const Rat& r1, const BuildingPoint& x2,
                                   const Rat& r2, int det_class) {
    std::vector<Lattice> out;
    int par = static_cast<int>(((det_class % 2) + 2) % 2);
    for (const auto& v : ball_vertices(x1, r1)) {
        if (v.parity() != par) continue;
        if (dist(BuildingPoint::vertex(v), x2) > r2) continue;
        out.push_back(v.rep_with_det(det_class));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Window of det-class lattices around a point.
std::vector<Lattice> window(const BuildingPoint& center, const Rat& radius, int det_class) {
    std::vector<Lattice> out;
    int par = static_cast<int>(((det_class % 2) + 2) % 2);
    for (const auto& v : ball_vertices(center, radius))
        if (v.parity() == par) out.push_back(v.rep_with_det(det_class));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<std::vector<Lattice>> chain_scan(const PhiChain& chain, const Lattice& M1, const Lattice& Ms,
                                             const std::vector<int>& r, const std::vector<int>& m) {
    int s = chain.len() + 1;
    if (static_cast<int>(r.size()) != s - 1 || static_cast<int>(m.size()) != s - 2)
        throw Error("chain_scan: arity mismatch");

    // Complete window per free slot j: the union, over every entry of slot
    // j-1's window, of the r_j-ball around its image. Slot 2 starts from the
    // fixed left end. Constraints are still rechecked on full tuples.
    std::vector<std::vector<Lattice>> windows;
    for (int j = 2; j <= s - 1; ++j) {
        std::set<Lattice> acc;
        if (j == 2) {
            BuildingPoint around = BuildingPoint::vertex(vertex_canonical(chain.apply(0, M1)));
            for (auto& L : window(around, Rat(r[0]), m[0])) acc.insert(L);
        } else {
            for (const auto& prev : windows.back()) {
                BuildingPoint around = BuildingPoint::vertex(vertex_canonical(chain.apply(j - 2, prev)));
                for (auto& L : window(around, Rat(r[static_cast<size_t>(j - 2)]), m[static_cast<size_t>(j - 2)]))
                    acc.insert(L);
            }
        }
        windows.emplace_back(acc.begin(), acc.end());
    }

    std::vector<std::vector<Lattice>> out;
    std::vector<Lattice> tuple(static_cast<size_t>(s - 2), Lattice::standard(chain.spec));
    // full cross product, constraints checked per tuple
    std::vector<size_t> idx(static_cast<size_t>(s - 2), 0);
    if (std::any_of(windows.begin(), windows.end(), [](const auto& w) { return w.empty(); })) return out;
    while (true) {
        for (int j = 0; j < s - 2; ++j) tuple[static_cast<size_t>(j)] = windows[static_cast<size_t>(j)][idx[static_cast<size_t>(j)]];
        bool ok = true;
        for (int j = 2; j <= s && ok; ++j) {
            const Lattice& prev = j == 2 ? M1 : tuple[static_cast<size_t>(j - 3)];
            const Lattice& curl = j == s ? Ms : tuple[static_cast<size_t>(j - 2)];
            Lattice img = chain.apply(j - 2, prev);
            if (dist(vertex_canonical(img), vertex_canonical(curl)) > r[static_cast<size_t>(j - 2)]) ok = false;
        }
        if (ok) out.push_back(tuple);
        int carry = s - 3;
        while (carry >= 0 && ++idx[static_cast<size_t>(carry)] == windows[static_cast<size_t>(carry)].size()) {
            idx[static_cast<size_t>(carry)] = 0;
            --carry;
        }
        if (carry < 0) break;
    }
    return out;
}

std::vector<Lattice> chain_scan_slot2(const PhiChain& chain, const Lattice& M1, const Lattice& Ms,
                                      const std::vector<int>& r, const std::vector<int>& m) {
    std::set<Lattice> slot2;
    for (const auto& tup : chain_scan(chain, M1, Ms, r, m)) slot2.insert(tup[0]);
    return {slot2.begin(), slot2.end()};
}

std::vector<KisinPoint> window_scan(const PhiModule& M0, const Cochar& nu, const FieldSpec* field,
                                    int window_slack) {
    PhiModule M = M0.embedded_into(field);
    auto s = solve_det_classes(M, nu);
    if (!s) return {};
    std::vector<Rat> R = radius_bound(M, nu);
    FixedPoint fp = fixed_point(M);

    int n = M.n;
    std::vector<std::vector<Lattice>> windows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        windows[static_cast<size_t>(i)] =
            window(fp.P[static_cast<size_t>(i)], R[static_cast<size_t>(i)] + Rat(window_slack),
                   (*s)[static_cast<size_t>(i)]);

    // Key maps and pair tables: image index per window entry, and the divisor
    // check between every image and every next-window entry, precomputed so
    // the full product scan stays a table walk.
    std::vector<std::vector<Lattice>> images(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        images[static_cast<size_t>(i)].reserve(windows[static_cast<size_t>(i)].size());
        for (const auto& L : windows[static_cast<size_t>(i)])
            images[static_cast<size_t>(i)].push_back(
                hnf(M.A[static_cast<size_t>((i + 1) % n)] * L.basis().substitute_upow(M.p())));
    }
    auto pair_ok = [&](int i, size_t src_idx, const Lattice& dst) {
        // divisor pair of dst with respect to the image of windows[i][src_idx]
        const Lattice& img = images[static_cast<size_t>(i)][src_idx];
        auto [a, b] = elementary_divisors(dst.basis(), img.basis());
        int nx = (i + 1) % n;
        int alpha = nu.pairs[static_cast<size_t>(nx)].first;
        int beta = nu.pairs[static_cast<size_t>(nx)].second;
        return a + b == alpha + beta && a <= alpha;
    };
    std::vector<std::vector<std::vector<char>>> table(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int nx = (i + 1) % n;
        auto& t = table[static_cast<size_t>(i)];
        t.assign(windows[static_cast<size_t>(i)].size(),
                 std::vector<char>(windows[static_cast<size_t>(nx)].size(), 0));
        for (size_t a = 0; a < windows[static_cast<size_t>(i)].size(); ++a)
            for (size_t b = 0; b < windows[static_cast<size_t>(nx)].size(); ++b)
                t[a][b] = pair_ok(i, a, windows[static_cast<size_t>(nx)][b]) ? 1 : 0;
    }

    std::vector<KisinPoint> out;

    // full product over the windows with table-driven constraint tests
    std::vector<size_t> stack;
    std::function<void(int)> rec = [&](int depth) {
        if (depth == n) {
            if (table[static_cast<size_t>(n - 1)][stack[static_cast<size_t>(n - 1)]][stack[0]]) {
                KisinPoint pt;
                pt.L.reserve(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i)
                    pt.L.push_back(windows[static_cast<size_t>(i)][stack[static_cast<size_t>(i)]]);
                out.push_back(std::move(pt));
            }
            return;
        }
        for (size_t k = 0; k < windows[static_cast<size_t>(depth)].size(); ++k) {
            if (depth > 0 && !table[static_cast<size_t>(depth - 1)][stack[static_cast<size_t>(depth - 1)]][k])
                continue;
            stack.push_back(k);
            rec(depth + 1);
            stack.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace oracles
} // namespace kisin
