#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "plumber/cell.hpp"
#include "plumber/curve.hpp"
#include "plumber/singularity.hpp"

namespace plumber {

/// A closed axis-parallel polygon with integer vertices. Consecutive
/// vertices differ in exactly one coordinate; no two non-adjacent segments
/// meet.
struct LatticeKnot {
    std::vector<std::array<std::int64_t, 3>> vertices;  // cyclic

    int segments() const { return static_cast<int>(vertices.size()); }

    const std::array<std::int64_t, 3>& at(int i) const {
        int m = segments();
        return vertices[static_cast<std::size_t>(((i % m) + m) % m)];
    }

    /// Axis of the segment from vertex i to i+1.
    int segment_axis(int i) const {
        const auto& a = at(i);
        const auto& b = at(i + 1);
        for (int c = 0; c < 3; ++c)
            if (a[static_cast<std::size_t>(c)] != b[static_cast<std::size_t>(c)]) return c;
        return -1;  // zero-length, never present in a valid knot
    }

    bool axis_parallel_consecutive() const {
        for (int i = 0; i < segments(); ++i) {
            const auto& a = at(i);
            const auto& b = at(i + 1);
            int moved = 0;
            for (int c = 0; c < 3; ++c)
                if (a[static_cast<std::size_t>(c)] != b[static_cast<std::size_t>(c)]) ++moved;
            if (moved != 1) return false;
        }
        return true;
    }

    /// Exhaustive embeddedness check: non-adjacent segments must not meet,
    /// adjacent ones only at the shared vertex.
    bool embedded() const {
        const int m = segments();
        auto interval = [](std::int64_t p, std::int64_t q) {
            return std::pair{std::min(p, q), std::max(p, q)};
        };
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
                // boxes spanned by the two segments
                std::array<std::pair<std::int64_t, std::int64_t>, 3> bi, bj;
                for (int c = 0; c < 3; ++c) {
                    bi[static_cast<std::size_t>(c)] =
                        interval(at(i)[static_cast<std::size_t>(c)], at(i + 1)[static_cast<std::size_t>(c)]);
                    bj[static_cast<std::size_t>(c)] =
                        interval(at(j)[static_cast<std::size_t>(c)], at(j + 1)[static_cast<std::size_t>(c)]);
                }
                std::array<std::pair<std::int64_t, std::int64_t>, 3> inter;
                bool meet = true;
                for (int c = 0; c < 3; ++c) {
                    auto lo = std::max(bi[static_cast<std::size_t>(c)].first,
                                       bj[static_cast<std::size_t>(c)].first);
                    auto hi = std::min(bi[static_cast<std::size_t>(c)].second,
                                       bj[static_cast<std::size_t>(c)].second);
                    if (lo > hi) { meet = false; break; }
                    inter[static_cast<std::size_t>(c)] = {lo, hi};
                }
                if (!meet) continue;
                if (!adjacent) return false;
                // adjacent: the intersection must be exactly the shared vertex
                const auto& shared = (j == i + 1) ? at(j) : at(0);
                for (int c = 0; c < 3; ++c)
                    if (inter[static_cast<std::size_t>(c)].first != shared[static_cast<std::size_t>(c)] ||
                        inter[static_cast<std::size_t>(c)].second != shared[static_cast<std::size_t>(c)])
                        return false;
            }
        }
        return true;
    }

    /// Unit-step text form: one letter per lattice step, axes xyz with case
    /// for direction (X = +x, x = -x).
    std::string step_string() const {
        static const char plus[3] = {'X', 'Y', 'Z'};
        static const char minus[3] = {'x', 'y', 'z'};
        std::string s;
        for (int i = 0; i < segments(); ++i) {
            int ax = segment_axis(i);
            std::int64_t d = at(i + 1)[static_cast<std::size_t>(ax)] -
                             at(i)[static_cast<std::size_t>(ax)];
            char c = d > 0 ? plus[ax] : minus[ax];
            for (std::int64_t k = 0; k < std::llabs(d); ++k) s += c;
        }
        return s;
    }
};

/// mu, nu and the closure flag of a cell: zero-length pipes, collinear
/// vertices, and the degenerate closure segment. Computed combinatorially
/// from the equality blocks and cross-checked geometrically by the caller.
struct MuNu {
    int mu = 0;
    int nu = 0;
    int closure_flag = 0;
    int total() const { return mu + nu + closure_flag; }
};

inline MuNu mu_nu(const CellName& c) {
    const int m = c.n() - 1;
    // block id per value per axis (0 = singleton)
    std::array<std::vector<int>, 3> block;
    for (int a = 0; a < 3; ++a) {
        block[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(m) + 1, 0);
        int id = 0;
        for (const auto& cyc : c.decomposition(static_cast<Axis>(a)).cycles) {
            if (cyc.values.size() < 2) continue;
            ++id;
            for (int v : cyc.values)
                block[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)] = id;
        }
    }
    auto same_block = [&](int axis, int u, int v) {
        int bu = block[static_cast<std::size_t>(axis)][static_cast<std::size_t>(u)];
        return bu != 0 && bu == block[static_cast<std::size_t>(axis)][static_cast<std::size_t>(v)];
    };
    MuNu out;
    for (int a = 0; a < 3; ++a)
        for (int k = 1; k + 1 <= m; ++k)
            if (same_block(a, k, k + 1)) ++out.mu;
    // Collinear-vertex counts per run axis. Within move k the segment order
    // is x, y, z, so x-runs and z-runs vanish across a single vertex pair,
    // while a y-run straddles two: z-seg(k) uses pair (k,k+1) and x-seg(k+1)
    // uses (k+1,k+2).
    for (int k = 1; k + 1 <= m; ++k) {
        if (same_block(1, k, k + 1) && same_block(2, k, k + 1)) ++out.nu;  // x-runs
        if (same_block(0, k, k + 1) && same_block(1, k, k + 1)) ++out.nu;  // z-runs
    }
    for (int k = 1; k + 2 <= m; ++k)
        if (same_block(2, k, k + 1) && same_block(0, k + 1, k + 2)) ++out.nu;  // y-runs
    // degenerate closure segment: v_1 and v_{n-1} share their y-plane (the
    // same vertex when n = 2)
    if (m == 1 || same_block(1, 1, m)) out.closure_flag = 1;
    return out;
}

namespace detail {

inline std::int64_t scaled(const Rat& r, std::int64_t scale) {
    // exact: scale is a common multiple of all coordinate denominators
    if ((scale * r.num()) % r.den() != 0)
        throw internal_error("lattice: scale does not clear denominators");
    return scale * r.num() / r.den();
}

} // namespace detail

/// Closure of a cell's representative into a lattice knot: the body corners
/// scaled to integers, an exit extension past the cube, a floor return in the
/// z=0 plane, with coincident and collinear vertices omitted (the reduced
/// closure).
inline LatticeKnot close_to_lattice(const CellName& c) {
    CurvePoint v = representative_point(c);
    if (is_singular(v))
        throw std::invalid_argument("close_to_lattice: representative is singular");
    const int n = c.n();
    // minimal uniform scale: lcm of n and the per-axis plane counts
    std::int64_t scale = n;
    for (int a = 0; a < 3; ++a) {
        std::int64_t planes = n - c.decomposition(static_cast<Axis>(a)).length();
        scale = std::lcm(scale, planes);
    }
    auto X = [&](int i) { return detail::scaled(v.coord(i, Axis::X), scale); };
    auto Y = [&](int i) { return detail::scaled(v.coord(i, Axis::Y), scale); };
    auto Z = [&](int i) { return detail::scaled(v.coord(i, Axis::Z), scale); };
    const std::int64_t out_x = scale + scale / n;  // one pipe width past the cube

    std::vector<std::array<std::int64_t, 3>> V;
    V.push_back({out_x, Y(n - 1), 0});
    V.push_back({X(1), Y(n - 1), 0});
    V.push_back({X(1), Y(1), 0});
    for (int k = 1; k <= n - 2; ++k) {
        V.push_back({X(k), Y(k), Z(k)});
        V.push_back({X(k + 1), Y(k), Z(k)});
        V.push_back({X(k + 1), Y(k + 1), Z(k)});
    }
    V.push_back({X(n - 1), Y(n - 1), Z(n - 1)});
    V.push_back({out_x, Y(n - 1), Z(n - 1)});

    // reduce: drop coincident consecutive vertices and collinear interior
    // vertices, cyclically, to a fixpoint
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::array<std::int64_t, 3>> out;
        const int m = static_cast<int>(V.size());
        for (int i = 0; i < m; ++i) {
            const auto& prev = V[static_cast<std::size_t>((i + m - 1) % m)];
            const auto& cur = V[static_cast<std::size_t>(i)];
            const auto& next = V[static_cast<std::size_t>((i + 1) % m)];
            if (cur == prev) { changed = true; continue; }
            int ax1 = -1, ax2 = -1;
            for (int a = 0; a < 3; ++a) {
                if (prev[static_cast<std::size_t>(a)] != cur[static_cast<std::size_t>(a)]) ax1 = a;
                if (cur[static_cast<std::size_t>(a)] != next[static_cast<std::size_t>(a)]) ax2 = a;
            }
            if (ax1 == ax2 && ax1 != -1 && next != prev) { changed = true; continue; }
            out.push_back(cur);
        }
        V = std::move(out);
    }

    LatticeKnot k{std::move(V)};
    MuNu counts = mu_nu(c);
    if (k.segments() != 3 * n - 1 - counts.total())
        throw internal_error("close_to_lattice: segment count disagrees with mu/nu/flag");
    if (!k.axis_parallel_consecutive() || !k.embedded())
        throw internal_error("close_to_lattice: closure is not an embedded lattice knot");
    return k;
}

} // namespace plumber
