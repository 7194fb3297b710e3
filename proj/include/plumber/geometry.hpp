#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plumber/cell.hpp"
#include "plumber/curve.hpp"
#include "plumber/singularity.hpp"

namespace plumber {

/// Deterministic choice of the move to subdivide at each articulation count:
/// a lexicographic round-robin that inserts into each original move once,
/// skipping the newly created ones, then restarts at the doubled count.
struct InsertionSchedule {
    int base = 3;

    int alpha(int n) const {
        int p = base;
        while (2 * p <= n) p *= 2;
        return 2 * (n - p);
    }

    /// Move index clamped into the subdividable range [1, n-2] of a plumbers'
    /// curve (the two boundary moves touch the pinned endpoints).
    int plumbers_move(int n) const {
        if (n < 3) throw std::invalid_argument("InsertionSchedule: need n >= 3");
        if (n == 3) return 1;
        return 1 + alpha(n) % (n - 2);
    }
};

/// ---------------------------------------------------------------------
/// Stabilization P_n -> P_{n+1}
/// ---------------------------------------------------------------------

enum class StabilizeBranch { Good, Planar, Interpolating };

struct Stabilized {
    CurvePoint point;                 // in P_{n+1}
    StabilizeBranch branch;
    std::array<Perm, 3> image_sigma;  // j-map images of the containing cell
    std::string image_name;           // cell name with degeneracy markers
};

namespace detail {

/// Nearest distinct coordinate from `from` in the direction of `toward`
/// among all vertex coordinates on `axis` (with the cube faces 0 and 1 as
/// sentinels). Returns `from` when there is no room (already at the wall).
inline Rat nearest_plane(const CurvePoint& v, Axis axis, const Rat& from, int dir) {
    std::optional<Rat> best;
    auto consider = [&](const Rat& c) {
        if (dir > 0 ? c > from : c < from) {
            if (!best || (dir > 0 ? c < *best : c > *best)) best = c;
        }
    };
    for (int i = 0; i <= v.moves(); ++i) consider(v.coord(i, axis));
    consider(Rat(0));
    consider(Rat(1));
    return best ? *best : from;
}

} // namespace detail

/// One-vertex stabilization of a plumbers' curve: insert a vertex at the
/// midpoint of the scheduled pipe in the direction cycling with n mod 3,
/// jogging one transverse coordinate so zero pipes never create coincident
/// vertices. The jog interpolates continuously between the generic branch
/// (no jog) and the degenerate one (half-clearance jog).
inline Stabilized stabilize(const CurvePoint& v, const CellName& cell,
                            const InsertionSchedule& sched) {
    const int n = v.moves();
    const Axis d = static_cast<Axis>(n % 3);
    const int m0 = sched.plumbers_move(n);

    const Rat lo = v.coord(m0, d);
    const Rat hi = v.coord(m0 + 1, d);
    const Rat gap = (hi - lo).abs();

    // classify: another vertex strictly between the pair makes the cell good
    bool has_between = false;
    for (int i = 0; i <= n; ++i) {
        if (i == m0 || i == m0 + 1) continue;
        const Rat& c = v.coord(i, d);
        Rat a = lo < hi ? lo : hi;
        Rat b = lo < hi ? hi : lo;
        if (a < c && c < b) { has_between = true; break; }
    }

    StabilizeBranch branch;
    Rat p;  // interpolation parameter: 1 at the generic end, 0 at the degenerate one
    if (gap == Rat(0)) {
        branch = StabilizeBranch::Planar;
        p = Rat(0);
    } else if (has_between) {
        branch = StabilizeBranch::Good;
        p = Rat(1);
    } else {
        branch = StabilizeBranch::Interpolating;
        // bounding planes of the pair among the other vertices (weak order,
        // so the parameter is continuous where the pair meets a plane)
        Rat below(0), above(1);
        for (int i = 0; i <= n; ++i) {
            if (i == m0 || i == m0 + 1) continue;
            const Rat& c = v.coord(i, d);
            if (c <= (lo < hi ? lo : hi) && c > below) below = c;
            if (c >= (lo < hi ? hi : lo) && c < above) above = c;
        }
        Rat maxgap = above - below;
        p = maxgap.sign() > 0 ? gap / maxgap : Rat(1);
        if (p > Rat(1)) p = Rat(1);
    }

    // new vertex: midpoint on d; earlier-in-move axes take v_{m0+1}, later
    // ones v_{m0}; one transverse coordinate jogs by ((1-p)/2) of the
    // clearance toward the adjacent run of the same move.
    std::array<Rat, 3> w;
    for (int a = 0; a < 3; ++a) {
        Axis ax = static_cast<Axis>(a);
        if (ax == d) w[static_cast<std::size_t>(a)] = rat_midpoint(lo, hi);
        else if (a < static_cast<int>(d)) w[static_cast<std::size_t>(a)] = v.coord(m0 + 1, ax);
        else w[static_cast<std::size_t>(a)] = v.coord(m0, ax);
    }
    const Rat scale = (Rat(1) - p) / Rat(2);
    if (scale.sign() > 0) {
        if (d == Axis::X || d == Axis::Y) {
            // split the outgoing run of move m0 (y for x-pipes, z for y-pipes)
            Axis jog = d == Axis::X ? Axis::Y : Axis::Z;
            int dir = (v.coord(m0 + 1, jog) - v.coord(m0, jog)).sign();
            if (dir != 0) {
                Rat plane = detail::nearest_plane(v, jog, v.coord(m0, jog), dir);
                w[static_cast<std::size_t>(jog)] =
                    v.coord(m0, jog) + scale * (plane - v.coord(m0, jog));
            }
        } else {
            // split the incoming y-run of move m0, retracting from v_{m0+1}
            Axis jog = Axis::Y;
            int dir = (v.coord(m0, jog) - v.coord(m0 + 1, jog)).sign();
            if (dir != 0) {
                Rat plane = detail::nearest_plane(v, jog, v.coord(m0 + 1, jog), dir);
                w[static_cast<std::size_t>(jog)] =
                    v.coord(m0 + 1, jog) + scale * (plane - v.coord(m0 + 1, jog));
            }
        }
    }

    Stabilized out{CurvePoint{}, branch, {}, {}};
    out.point.vertices = v.vertices;
    out.point.vertices.insert(out.point.vertices.begin() + m0 + 1, w);

    // image cell per the subdivision maps: the middle insertion on the
    // insertion axis; on the others the new vertex ties with v_{m0} when the
    // axis comes later in the move order (insert after m0) and with v_{m0+1}
    // when it comes earlier (insert before the relabeled m0+2)
    for (int a = 0; a < 3; ++a) {
        Axis ax = static_cast<Axis>(a);
        if (ax == d)
            out.image_sigma[static_cast<std::size_t>(a)] = insert_middle(cell.sigma(ax), m0);
        else if (a < static_cast<int>(d))
            out.image_sigma[static_cast<std::size_t>(a)] =
                insert_before_successor(cell.sigma(ax), m0);
        else
            out.image_sigma[static_cast<std::size_t>(a)] = insert_after(cell.sigma(ax), m0);
    }
    std::ostringstream os;
    os << '[';
    for (int a = 0; a < 3; ++a) {
        if (a) os << ',';
        os << out.image_sigma[static_cast<std::size_t>(a)].str() << '_'
           << axis_letter(static_cast<Axis>(a));
    }
    os << ']';
    const char dl = axis_letter(d);
    const char o1 = axis_letter(static_cast<Axis>((static_cast<int>(d) + 1) % 3));
    const char o2 = axis_letter(static_cast<Axis>((static_cast<int>(d) + 2) % 3));
    auto tie_marker = [&](Axis ax) {
        std::ostringstream t;
        if (static_cast<int>(ax) < static_cast<int>(d))
            t << '(' << m0 + 1 << ' ' << m0 + 2 << ")_" << axis_letter(ax);
        else
            t << '(' << m0 << ' ' << m0 + 1 << ")_" << axis_letter(ax);
        return t.str();
    };
    switch (branch) {
        case StabilizeBranch::Good:
            os << ";<" << m0 + 1 << ">_" << dl
               << ";" << tie_marker(static_cast<Axis>((static_cast<int>(d) + 1) % 3))
               << ";" << tie_marker(static_cast<Axis>((static_cast<int>(d) + 2) % 3));
            break;
        case StabilizeBranch::Planar:
            os << ";(" << m0 << ' ' << m0 + 1 << ")_" << dl << "<" << m0 + 1 << ">_" << dl
               << ";<" << m0 + 1 << ">_" << o1 << ";<" << m0 + 1 << ">_" << o2;
            break;
        case StabilizeBranch::Interpolating:
            os << ";<" << m0 + 1 << ">_" << dl << " (containing cell)";
            break;
    }
    out.image_name = os.str();
    return out;
}

inline Stabilized stabilize(const CurvePoint& v, const InsertionSchedule& sched) {
    return stabilize(v, cell_of(v), sched);
}

/// ---------------------------------------------------------------------
/// PL knots and the plumbers' bridge
/// ---------------------------------------------------------------------

/// Piecewise-linear arc from (0,0,0) to (1,1,1) with arbitrary segment
/// directions and exact rational vertices.
struct PLKnot {
    std::vector<std::array<Rat, 3>> vertices;

    int segments() const { return static_cast<int>(vertices.size()) - 1; }

    bool endpoints_valid() const {
        return vertices.size() >= 2 &&
               vertices.front() == std::array<Rat, 3>{Rat(0), Rat(0), Rat(0)} &&
               vertices.back() == std::array<Rat, 3>{Rat(1), Rat(1), Rat(1)};
    }
};

namespace detail {

inline std::array<Rat, 3> sub3(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline std::array<Rat, 3> cross3(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Rat dot3(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline bool is_zero3(const std::array<Rat, 3>& a) {
    return a[0].sign() == 0 && a[1].sign() == 0 && a[2].sign() == 0;
}

/// Exact intersection test for 3D segments [a,b] and [c,d].
inline bool segments_meet(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b,
                          const std::array<Rat, 3>& c, const std::array<Rat, 3>& d) {
    auto d1 = sub3(b, a), d2 = sub3(d, c), r = sub3(c, a);
    auto n = cross3(d1, d2);
    if (!is_zero3(n)) {
        if (dot3(r, n).sign() != 0) return false;  // skew
        Rat nn = dot3(n, n);
        Rat s = dot3(cross3(r, d2), n) / nn;
        Rat t = dot3(cross3(r, d1), n) / nn;
        return Rat(0) <= s && s <= Rat(1) && Rat(0) <= t && t <= Rat(1);
    }
    // parallel: collinear iff r x d1 = 0
    if (!is_zero3(cross3(r, d1))) return false;
    // overlap of parameter intervals along d1
    Rat dd = dot3(d1, d1);
    if (dd.sign() == 0) {
        // a == b: point-on-segment
        if (!is_zero3(cross3(sub3(a, c), d2))) return false;
        Rat t = dot3(sub3(a, c), d2) / dot3(d2, d2);
        return Rat(0) <= t && t <= Rat(1);
    }
    Rat t0 = dot3(sub3(c, a), d1) / dd;
    Rat t1 = dot3(sub3(d, a), d1) / dd;
    if (t0 > t1) std::swap(t0, t1);
    return !(t1 < Rat(0) || t0 > Rat(1));
}

} // namespace detail

/// Injectivity check: every segment has positive length, non-adjacent
/// segments are disjoint, and adjacent ones meet only at the shared vertex.
inline bool pl_nonsingular(const PLKnot& w) {
    const int m = w.segments();
    if (m < 1) return false;
    for (int i = 0; i < m; ++i)
        if (detail::is_zero3(detail::sub3(w.vertices[static_cast<std::size_t>(i + 1)],
                                          w.vertices[static_cast<std::size_t>(i)])))
            return false;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const auto& a = w.vertices[static_cast<std::size_t>(i)];
            const auto& b = w.vertices[static_cast<std::size_t>(i + 1)];
            const auto& c = w.vertices[static_cast<std::size_t>(j)];
            const auto& d = w.vertices[static_cast<std::size_t>(j + 1)];
            if (j == i + 1) {
                // fold-back means the segments overlap beyond the shared vertex
                auto u = detail::sub3(a, b);
                auto v = detail::sub3(d, c);
                if (detail::is_zero3(detail::cross3(u, v)) && detail::dot3(u, v).sign() > 0)
                    return false;
                continue;
            }
            if (detail::segments_meet(a, b, c, d)) return false;
        }
    }
    return true;
}

/// The articulation map on PL knots: insert the midpoint of the scheduled
/// segment. Injective and image-preserving.
inline PLKnot pl_insert(const PLKnot& w, const InsertionSchedule& sched) {
    const int n = w.segments();
    int s = sched.alpha(n) % n;
    PLKnot out = w;
    std::array<Rat, 3> mid;
    for (int c = 0; c < 3; ++c)
        mid[static_cast<std::size_t>(c)] =
            rat_midpoint(w.vertices[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)],
                         w.vertices[static_cast<std::size_t>(s + 1)][static_cast<std::size_t>(c)]);
    out.vertices.insert(out.vertices.begin() + s + 1, mid);
    return out;
}

namespace detail {

/// Squared distance between the boxes spanned by two axis-parallel segments,
/// which for such segments is the squared segment distance.
inline Rat box_distance_sq(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b,
                           const std::array<Rat, 3>& c, const std::array<Rat, 3>& d) {
    Rat total(0);
    for (int ax = 0; ax < 3; ++ax) {
        std::size_t k = static_cast<std::size_t>(ax);
        Rat lo1 = a[k] < b[k] ? a[k] : b[k];
        Rat hi1 = a[k] < b[k] ? b[k] : a[k];
        Rat lo2 = c[k] < d[k] ? c[k] : d[k];
        Rat hi2 = c[k] < d[k] ? d[k] : c[k];
        Rat g = lo2 > hi1 ? lo2 - hi1 : (lo1 > hi2 ? lo1 - hi2 : Rat(0));
        total += g * g;
    }
    return total;
}

/// Largest multiple of 1/grid whose square is at most r.
inline Rat sqrt_lower(const Rat& r, std::int64_t grid) {
    if (r.sign() <= 0) return Rat(0);
    __int128 scaled = static_cast<__int128>(r.num()) * grid * grid / r.den();
    std::int64_t k = static_cast<std::int64_t>(std::sqrt(static_cast<double>(scaled)));
    while (static_cast<__int128>(k + 1) * (k + 1) <= scaled) ++k;
    while (k > 0 && static_cast<__int128>(k) * k > scaled) --k;
    return Rat(k, grid);
}

} // namespace detail

/// Buckling a plumbers' knot into a PL knot with 3n segments: corners of the
/// curve, with each corner displaced away from its short neighbor pipes so
/// that zero-length pipes never produce coincident vertices. Displacements
/// are strictly below the global perturbation distance.
inline PLKnot buckle(const CurvePoint& v, std::int64_t fraction_den = 10) {
    if (is_singular(v))
        throw std::invalid_argument("buckle: curve is singular");
    const int n = v.moves();
    const int total = 3 * n;

    // global perturbation distance: 1/fraction_den of the least distance
    // between distant pipes and from interior pipes to the cube boundary
    auto cs = corner_sequence(v);
    std::optional<Rat> min_sq;
    auto consider = [&](const Rat& d2) {
        if (d2.sign() > 0 && (!min_sq || d2 < *min_sq)) min_sq = d2;
    };
    for (int p = 0; p < total; ++p)
        for (int q = p + 4; q < total; ++q)
            consider(detail::box_distance_sq(cs[static_cast<std::size_t>(p)],
                                             cs[static_cast<std::size_t>(p + 1)],
                                             cs[static_cast<std::size_t>(q)],
                                             cs[static_cast<std::size_t>(q + 1)]));
    for (int p = 0; p < total; ++p) {
        Rat bd(1);
        for (int ax = 0; ax < 3; ++ax) {
            std::size_t k = static_cast<std::size_t>(ax);
            const Rat& u = cs[static_cast<std::size_t>(p)][k];
            const Rat& w = cs[static_cast<std::size_t>(p + 1)][k];
            Rat lo = u < w ? u : w;
            Rat hi = u < w ? w : u;
            if (lo < bd) bd = lo;
            if (Rat(1) - hi < bd) bd = Rat(1) - hi;
        }
        if (bd.sign() > 0) consider(bd * bd);
    }
    if (!min_sq)
        throw internal_error("buckle: no positive clearance found");

    const std::int64_t grid = 1 << 12;
    Rat eps = detail::sqrt_lower(*min_sq, grid) / Rat(fraction_den);
    Rat eps_sq = eps * eps;

    // beta per pipe
    std::vector<Rat> beta(static_cast<std::size_t>(total), Rat(0));
    std::vector<int> travel(static_cast<std::size_t>(total), 0);
    for (int p = 0; p < total; ++p) {
        auto [len, s] = pipe_metrics(v, {static_cast<Axis>(p % 3), p / 3});
        travel[static_cast<std::size_t>(p)] = -s;  // +1 when increasing
        Rat b2 = (eps_sq - len * len) / Rat(2);
        if (b2.sign() > 0) beta[static_cast<std::size_t>(p)] = detail::sqrt_lower(b2, grid);
    }

    PLKnot out;
    out.vertices = cs;
    for (int k = 1; k < total; ++k) {
        int pa = k - 1;  // incoming pipe
        int pb = k;      // outgoing pipe
        std::size_t ua = static_cast<std::size_t>(pa % 3);
        std::size_t ub = static_cast<std::size_t>(pb % 3);
        auto& w = out.vertices[static_cast<std::size_t>(k)];
        // retract along the incoming pipe by beta(outgoing), advance into the
        // outgoing pipe by beta(incoming)
        w[ua] -= Rat(travel[static_cast<std::size_t>(pa)]) * beta[static_cast<std::size_t>(pb)];
        w[ub] += Rat(travel[static_cast<std::size_t>(pb)]) * beta[static_cast<std::size_t>(pa)];
    }
    if (!pl_nonsingular(out))
        throw internal_error("buckle: output failed the embedding check");
    return out;
}

/// A_N o I_{n,N}: subdivide until no segment exceeds a tenth of the least
/// clearance, then read the vertices as a plumbers' curve. The clearance is
/// estimated in floating point; the result is verified exactly.
inline std::pair<CurvePoint, int> pl_to_plumbers(const PLKnot& w, int max_steps = 4096) {
    if (!w.endpoints_valid())
        throw std::invalid_argument("pl_to_plumbers: endpoints must be the cube diagonal");
    if (!pl_nonsingular(w))
        throw std::invalid_argument("pl_to_plumbers: input is singular");

    auto dist_sq = [](const std::array<Rat, 3>& a, const std::array<Rat, 3>& b,
                      const std::array<Rat, 3>& c, const std::array<Rat, 3>& d) {
        // floating-point segment distance, adequate for choosing a target
        auto f = [](const Rat& r) { return r.to_double(); };
        double ax = f(a[0]), ay = f(a[1]), az = f(a[2]);
        double bx = f(b[0]), by = f(b[1]), bz = f(b[2]);
        double cx = f(c[0]), cy = f(c[1]), cz = f(c[2]);
        double dx = f(d[0]), dy = f(d[1]), dz = f(d[2]);
        double best = 1e300;
        const int K = 16;
        for (int i = 0; i <= K; ++i) {
            double s = static_cast<double>(i) / K;
            double px = ax + s * (bx - ax), py = ay + s * (by - ay), pz = az + s * (bz - az);
            for (int j = 0; j <= K; ++j) {
                double t = static_cast<double>(j) / K;
                double qx = cx + t * (dx - cx), qy = cy + t * (dy - cy), qz = cz + t * (dz - cz);
                double d2 = (px - qx) * (px - qx) + (py - qy) * (py - qy) + (pz - qz) * (pz - qz);
                best = std::min(best, d2);
            }
        }
        return best;
    };

    // least positive clearances; vertices and segment pairs already touching
    // the boundary or each other do not constrain the subdivision target
    double m1 = 1e300;
    const int m = w.segments();
    for (int i = 0; i < m; ++i)
        for (int j = i + 2; j < m; ++j) {
            double d2 = dist_sq(w.vertices[static_cast<std::size_t>(i)],
                                w.vertices[static_cast<std::size_t>(i + 1)],
                                w.vertices[static_cast<std::size_t>(j)],
                                w.vertices[static_cast<std::size_t>(j + 1)]);
            if (d2 > 0) m1 = std::min(m1, d2);
        }
    double m2 = 1e300;
    for (int i = 1; i < m; ++i)
        for (int c = 0; c < 3; ++c) {
            double x = w.vertices[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].to_double();
            double d2 = std::min(x * x, (1 - x) * (1 - x));
            if (d2 > 0) m2 = std::min(m2, d2);
        }
    double delta = std::sqrt(std::min(m1, m2)) / 10.0;
    if (!(delta > 0) || delta > 1)
        throw internal_error("pl_to_plumbers: no usable clearance");

    PLKnot cur = w;
    InsertionSchedule sched{w.segments()};
    int steps = 0;
    auto too_long = [&]() {
        for (int i = 0; i < cur.segments(); ++i) {
            auto d = detail::sub3(cur.vertices[static_cast<std::size_t>(i + 1)],
                                  cur.vertices[static_cast<std::size_t>(i)]);
            double len2 = detail::dot3(d, d).to_double();
            if (len2 > delta * delta) return true;
        }
        return false;
    };
    while (too_long()) {
        if (++steps > max_steps)
            throw resource_limit_error("pl_to_plumbers: subdivision cap exceeded");
        cur = pl_insert(cur, sched);
    }

    // Exactly axis-parallel runs would read as plumbers' curves that pause
    // for three pipes at every corner, which the distant-pipe criterion
    // rejects. A graded sub-clearance nudge puts the vertices in general
    // position without leaving the knot's tube; the result is checked
    // exactly and the nudge shrinks until it passes.
    const int nv = static_cast<int>(cur.vertices.size());
    std::int64_t grid = 1;
    while (grid * 8 < static_cast<std::int64_t>(16.0 * nv / delta)) grid *= 2;
    for (int attempt = 0; attempt < 8; ++attempt, grid *= 2) {
        CurvePoint out;
        out.vertices = cur.vertices;
        bool in_cube = true;
        for (int i = 1; i < nv - 1 && in_cube; ++i)
            for (int c = 0; c < 3; ++c) {
                Rat& x = out.vertices[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
                Rat h = Rat(3 * i + c + 1, grid) / Rat(nv);
                x += x < Rat(1, 2) ? h : -h;  // nudge toward the cube interior
                if (!(Rat(0) < x && x < Rat(1))) { in_cube = false; break; }
            }
        if (!in_cube) continue;
        if (!is_singular(out)) return {out, steps};
    }
    throw internal_error("pl_to_plumbers: could not reach general position");
}

} // namespace plumber
