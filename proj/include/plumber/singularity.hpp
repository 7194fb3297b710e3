#pragma once

#include <cstdlib>
#include <stdexcept>

#include "plumber/cell.hpp"
#include "plumber/curve.hpp"

namespace plumber {

/// Pipes separated by at least three intervening pipes in the pipe order.
/// Only distant pipes can meet away from the shared-corner contacts that
/// every plumbers' curve has.
inline bool pipes_distant(PipeRef a, PipeRef b) {
    return std::abs(a.linear_index() - b.linear_index()) >= 4;
}

/// Exact intersection test for two axis-parallel pipes: their spanned boxes
/// meet iff the coordinate intervals overlap on all three axes. For two
/// pipes each degenerate in two axes this is the intersection condition.
inline bool pipes_intersect(const CurvePoint& v, PipeRef a, PipeRef b) {
    if (!pipes_distant(a, b))
        throw std::invalid_argument("pipes_intersect: pipes must be distant");
    auto [a0, a1] = pipe_endpoints(v, a);
    auto [b0, b1] = pipe_endpoints(v, b);
    for (std::size_t c = 0; c < 3; ++c) {
        const Rat& alo = a0[c] < a1[c] ? a0[c] : a1[c];
        const Rat& ahi = a0[c] < a1[c] ? a1[c] : a0[c];
        const Rat& blo = b0[c] < b1[c] ? b0[c] : b1[c];
        const Rat& bhi = b0[c] < b1[c] ? b1[c] : b0[c];
        if ((alo > blo ? alo : blo) > (ahi < bhi ? ahi : bhi)) return false;
    }
    return true;
}

/// A curve is singular iff some distant pair of pipes intersects.
inline bool is_singular(const CurvePoint& v) {
    const int total = 3 * v.moves();
    for (int p = 0; p < total; ++p) {
        PipeRef a{static_cast<Axis>(p % 3), p / 3};
        for (int q = p + 4; q < total; ++q) {
            PipeRef b{static_cast<Axis>(q % 3), q / 3};
            if (pipes_intersect(v, a, b)) return true;
        }
    }
    return false;
}

namespace detail {

/// Positions extended to the pinned endpoints: value 0 sits at position 0 and
/// value n at position n.
struct ExtendedPositions {
    const Perm* inv;  // inverse of sigma (size n-1)
    int n;
    int operator()(int value) const {
        if (value == 0) return 0;
        if (value == n) return n;
        return (*inv)(value);
    }
};

inline bool between_inclusive(int q, int p, int r) {
    return static_cast<long>(p - q) * static_cast<long>(r - q) <= 0;
}

} // namespace detail

/// Combinatorial discriminant predicate: whether crossing the face of the top
/// cell given by the appearing transposition tau = (a b) on `axis` forces an
/// intersection of distant pipes. The conditions are the coplanarity-and-
/// betweenness statements of the pipe pairs that the swap can bring together,
/// each gated by distantness of that pair.
inline bool produces_intersection_words(int n, Axis axis, int a, int b,
                                        const Perm& inv_x, const Perm& inv_y,
                                        const Perm& inv_z) {
    using detail::between_inclusive;
    detail::ExtendedPositions px{&inv_x, n}, py{&inv_y, n}, pz{&inv_z, n};
    auto distant = [](int p, int q) { return std::abs(p - q) >= 4; };

    switch (axis) {
        case Axis::X: {
            // y_{a-1} n z_{b-1} and y_{b-1} n z_{a-1}
            if (distant(3 * (a - 1) + 1, 3 * (b - 1) + 2) &&
                between_inclusive(py(b), py(a - 1), py(a)) &&
                between_inclusive(pz(a - 1), pz(b - 1), pz(b)))
                return true;
            if (distant(3 * (b - 1) + 1, 3 * (a - 1) + 2) &&
                between_inclusive(py(a), py(b - 1), py(b)) &&
                between_inclusive(pz(b - 1), pz(a - 1), pz(a)))
                return true;
            return false;
        }
        case Axis::Y: {
            // x_a n z_{b-1} and x_b n z_{a-1}
            if (distant(3 * a, 3 * (b - 1) + 2) &&
                between_inclusive(px(b), px(a), px(a + 1)) &&
                between_inclusive(pz(a), pz(b - 1), pz(b)))
                return true;
            if (distant(3 * b, 3 * (a - 1) + 2) &&
                between_inclusive(px(a), px(b), px(b + 1)) &&
                between_inclusive(pz(b), pz(a - 1), pz(a)))
                return true;
            return false;
        }
        default: {
            // x_a n y_b and x_b n y_a
            if (distant(3 * a, 3 * b + 1) &&
                between_inclusive(px(b + 1), px(a), px(a + 1)) &&
                between_inclusive(py(a), py(b), py(b + 1)))
                return true;
            if (distant(3 * b, 3 * a + 1) &&
                between_inclusive(px(a + 1), px(b), px(b + 1)) &&
                between_inclusive(py(b), py(a), py(a + 1)))
                return true;
            return false;
        }
    }
}

/// Predicate form taking a top cell and an appearing transposition.
inline bool produces_intersection(const CellName& c, Transposition tau, Axis axis) {
    if (!c.is_top())
        throw std::invalid_argument("produces_intersection: cell must be top-dimensional");
    const auto appearing = transpositions_appearing(c.sigma(axis));
    if (std::find(appearing.begin(), appearing.end(), tau) == appearing.end())
        throw std::invalid_argument("produces_intersection: tau does not appear in sigma");
    Perm inv_x = c.sigma(Axis::X).inverse();
    Perm inv_y = c.sigma(Axis::Y).inverse();
    Perm inv_z = c.sigma(Axis::Z).inverse();
    return produces_intersection_words(c.n(), axis, tau.a, tau.b, inv_x, inv_y, inv_z);
}

} // namespace plumber
