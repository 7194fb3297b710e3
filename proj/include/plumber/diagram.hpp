#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plumber/lattice.hpp"
#include "plumber/rational.hpp"

namespace plumber {

/// Combinatorial planar knot diagram: each crossing has four ports numbered
/// counterclockwise; strands pass straight through (port p to p+2); `mate`
/// joins arc ends. Orientation is carried by the incoming-under and
/// incoming-over ports.
class Diagram {
  public:
    int crossings() const { return static_cast<int>(under_in_.size()); }

    int under_in(int c) const { return under_in_[static_cast<std::size_t>(c)]; }
    int over_in(int c) const { return over_in_[static_cast<std::size_t>(c)]; }
    int under_out(int c) const { return (under_in(c) + 2) % 4; }
    int over_out(int c) const { return (over_in(c) + 2) % 4; }
    bool over_parity(int c) const { return over_in(c) % 2 == 1; }

    int mate(int dart) const { return mate_[static_cast<std::size_t>(dart)]; }
    static int dart(int c, int port) { return 4 * c + port; }
    static int crossing_of(int d) { return d / 4; }
    static int port_of(int d) { return d % 4; }

    /// Crossing sign: +1 when the under-out port immediately follows the
    /// over-out port counterclockwise.
    int sign(int c) const {
        return under_out(c) == (over_out(c) + 1) % 4 ? 1 : -1;
    }
    int writhe() const {
        int w = 0;
        for (int c = 0; c < crossings(); ++c) w += sign(c);
        return w;
    }

    /// Build from explicit crossing data. `visits` is the strand traversal:
    /// a cyclic sequence of (crossing, is_over); `port_of_visit` gives the
    /// in-port of each visit; ports around each crossing must be consistent
    /// (in/out opposite).
    static Diagram from_visits(int n_crossings,
                               const std::vector<std::pair<int, bool>>& visits,
                               const std::vector<int>& in_ports) {
        Diagram d;
        d.under_in_.assign(static_cast<std::size_t>(n_crossings), -1);
        d.over_in_.assign(static_cast<std::size_t>(n_crossings), -1);
        d.mate_.assign(static_cast<std::size_t>(4 * n_crossings), -1);
        const int m = static_cast<int>(visits.size());
        for (int k = 0; k < m; ++k) {
            auto [c, over] = visits[static_cast<std::size_t>(k)];
            int p = in_ports[static_cast<std::size_t>(k)];
            (over ? d.over_in_ : d.under_in_)[static_cast<std::size_t>(c)] = p;
        }
        for (int k = 0; k < m; ++k) {
            auto [c1, over1] = visits[static_cast<std::size_t>(k)];
            int next = (k + 1) % m;
            auto [c2, over2] = visits[static_cast<std::size_t>(next)];
            int out1 = (in_ports[static_cast<std::size_t>(k)] + 2) % 4;
            int in2 = in_ports[static_cast<std::size_t>(next)];
            d.mate_[static_cast<std::size_t>(dart(c1, out1))] = dart(c2, in2);
            d.mate_[static_cast<std::size_t>(dart(c2, in2))] = dart(c1, out1);
        }
        for (int c = 0; c < n_crossings; ++c)
            if (d.under_in_[static_cast<std::size_t>(c)] < 0 ||
                d.over_in_[static_cast<std::size_t>(c)] < 0 ||
                d.under_in_[static_cast<std::size_t>(c)] % 2 ==
                    d.over_in_[static_cast<std::size_t>(c)] % 2)
                throw internal_error("Diagram: inconsistent crossing ports");
        return d;
    }

    /// Faces of the planar map as orbits of the face-walk; returns the face
    /// id of every directed dart (indexed by its starting port-dart) and the
    /// face count. Verifies Euler's formula.
    struct Faces {
        std::vector<int> face_of_dart;  // starting port-dart -> face id
        int count = 0;
        std::vector<int> color;         // per face, 0/1 checkerboard
    };

    Faces faces() const {
        const int n = crossings();
        Faces f;
        f.face_of_dart.assign(static_cast<std::size_t>(4 * n), -1);
        for (int d0 = 0; d0 < 4 * n; ++d0) {
            if (f.face_of_dart[static_cast<std::size_t>(d0)] != -1) continue;
            int d = d0;
            while (f.face_of_dart[static_cast<std::size_t>(d)] == -1) {
                f.face_of_dart[static_cast<std::size_t>(d)] = f.count;
                int arrived = mate(d);
                d = dart(crossing_of(arrived), (port_of(arrived) + 1) % 4);
            }
            ++f.count;
        }
        if (n > 0 && n - 2 * n + f.count != 2)
            throw internal_error("Diagram::faces: Euler check failed");
        // checkerboard: opposite darts of each arc lie on the two sides
        f.color.assign(static_cast<std::size_t>(f.count), -1);
        std::vector<int> stack;
        f.color[0] = 0;
        stack.push_back(0);
        // adjacency lists via arcs
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(f.count));
        for (int d = 0; d < 4 * n; ++d) {
            int a = f.face_of_dart[static_cast<std::size_t>(d)];
            int b = f.face_of_dart[static_cast<std::size_t>(mate(d))];
            adj[static_cast<std::size_t>(a)].push_back(b);
        }
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (f.color[static_cast<std::size_t>(v)] == -1) {
                    f.color[static_cast<std::size_t>(v)] =
                        1 - f.color[static_cast<std::size_t>(u)];
                    stack.push_back(v);
                } else if (f.color[static_cast<std::size_t>(v)] ==
                           f.color[static_cast<std::size_t>(u)]) {
                    throw internal_error("Diagram::faces: not checkerboard colorable");
                }
            }
        }
        return f;
    }

    /// Face touching the corner between ports k and k+1 of crossing c.
    static int corner_face(const Faces& f, int c, int k) {
        return f.face_of_dart[static_cast<std::size_t>(dart(c, (k + 1) % 4))];
    }

    /// Reidemeister I and II reduction to a local fixpoint.
    Diagram simplified() const {
        Diagram d = *this;
        bool changed = true;
        while (changed && d.crossings() > 0) {
            changed = d.try_r1() || d.try_r2();
        }
        return d;
    }

    /// Gauss code in traversal order: (crossing, over?, sign) triples,
    /// rendered like "O1+ U2- ...". Crossing ids are renumbered by first
    /// visit.
    std::string gauss_code() const {
        if (crossings() == 0) return "";
        std::vector<int> label(static_cast<std::size_t>(crossings()), 0);
        int next_label = 0;
        std::ostringstream os;
        bool first = true;
        for (auto [c, over] : traversal()) {
            if (label[static_cast<std::size_t>(c)] == 0) label[static_cast<std::size_t>(c)] = ++next_label;
            if (!first) os << ' ';
            first = false;
            os << (over ? 'O' : 'U') << label[static_cast<std::size_t>(c)]
               << (sign(c) > 0 ? '+' : '-');
        }
        return os.str();
    }

    /// PD notation: X(a,b,c,d) per crossing, arcs numbered 1..2n along the
    /// orientation, listed counterclockwise from the incoming under-arc.
    std::string pd_code() const {
        if (crossings() == 0) return "PD[]";
        auto visits = traversal();
        const int m = static_cast<int>(visits.size());
        // arc k runs from visit k to visit k+1; arriving arc of visit k is k-1
        std::vector<std::array<int, 4>> arc_at(
            static_cast<std::size_t>(crossings()));
        for (int k = 0; k < m; ++k) {
            auto [c, over] = visits[static_cast<std::size_t>(k)];
            int in_port = over ? over_in(c) : under_in(c);
            int out_port = (in_port + 2) % 4;
            int in_arc = (k + m - 1) % m + 1;
            int out_arc = k + 1;
            arc_at[static_cast<std::size_t>(c)][static_cast<std::size_t>(in_port)] = in_arc;
            arc_at[static_cast<std::size_t>(c)][static_cast<std::size_t>(out_port)] = out_arc;
        }
        std::ostringstream os;
        os << "PD[";
        for (int c = 0; c < crossings(); ++c) {
            if (c) os << ", ";
            int p0 = under_in(c);
            os << "X(";
            for (int k = 0; k < 4; ++k) {
                if (k) os << ',';
                os << arc_at[static_cast<std::size_t>(c)][static_cast<std::size_t>((p0 + k) % 4)];
            }
            os << ")";
        }
        os << "]";
        return os.str();
    }

    /// Strand traversal as (crossing, over?) pairs, starting at crossing 0's
    /// under passage.
    std::vector<std::pair<int, bool>> traversal() const {
        std::vector<std::pair<int, bool>> out;
        if (crossings() == 0) return out;
        int d = dart(0, under_out(0));
        do {
            int arrived = mate(d);
            int c = crossing_of(arrived);
            int p = port_of(arrived);
            bool over = (p % 2 == 1) == over_parity(c);
            out.emplace_back(c, over);
            d = dart(c, (p + 2) % 4);
        } while (d != dart(0, under_out(0)));
        return out;
    }

  private:
    bool try_r1() {
        for (int c = 0; c < crossings(); ++c) {
            for (int k = 0; k < 4; ++k) {
                if (mate(dart(c, k)) == dart(c, (k + 1) % 4)) {
                    int a = mate(dart(c, (k + 2) % 4));
                    int b = mate(dart(c, (k + 3) % 4));
                    remove_crossings({c}, {{a, b}});
                    return true;
                }
            }
        }
        return false;
    }

    bool try_r2() {
        const int n = crossings();
        for (int c = 0; c < n; ++c) {
            for (int k = 0; k < 4; ++k) {
                int m1 = mate(dart(c, k));
                int d2 = crossing_of(m1);
                if (d2 == c) continue;
                int p2 = port_of(m1);
                // bigon: the CCW-next port at c mates the CW-next port at d2
                int m2 = mate(dart(c, (k + 1) % 4));
                if (crossing_of(m2) != d2 || port_of(m2) != (p2 + 3) % 4) continue;
                // strands: A passes c at (k, k+2) and d2 at (p2, p2+2);
                // removable iff A is over at both or under at both
                bool a_over_c = (k % 2 == 1) == over_parity(c);
                bool a_over_d = (p2 % 2 == 1) == over_parity(d2);
                if (a_over_c != a_over_d) continue;
                int a_out_c = mate(dart(c, (k + 2) % 4));
                int a_out_d = mate(dart(d2, (p2 + 2) % 4));
                int b_out_c = mate(dart(c, (k + 3) % 4));
                int b_out_d = mate(dart(d2, (p2 + 1) % 4));
                remove_crossings({c, d2}, {{a_out_c, a_out_d}, {b_out_c, b_out_d}});
                return true;
            }
        }
        return false;
    }

    /// Remove crossings and splice the given dart pairs together, dropping
    /// splices that collapse onto removed crossings (free loops).
    void remove_crossings(std::vector<int> gone, std::vector<std::pair<int, int>> splices) {
        std::vector<bool> removed(static_cast<std::size_t>(crossings()), false);
        for (int c : gone) removed[static_cast<std::size_t>(c)] = true;
        for (auto [a, b] : splices) {
            bool a_gone = removed[static_cast<std::size_t>(crossing_of(a))];
            bool b_gone = removed[static_cast<std::size_t>(crossing_of(b))];
            if (a_gone && b_gone) continue;  // strand closes into a free loop
            if (a_gone || b_gone) {
                // follow the chain through removed crossings: splice targets
                // given here never point into removed crossings for R1/R2
                throw internal_error("Diagram: splice into removed crossing");
            }
            mate_[static_cast<std::size_t>(a)] = b;
            mate_[static_cast<std::size_t>(b)] = a;
        }
        // compact
        std::vector<int> newid(static_cast<std::size_t>(crossings()), -1);
        int next = 0;
        for (int c = 0; c < crossings(); ++c)
            if (!removed[static_cast<std::size_t>(c)]) newid[static_cast<std::size_t>(c)] = next++;
        std::vector<int> u2, o2, m2(static_cast<std::size_t>(4 * next), -1);
        u2.reserve(static_cast<std::size_t>(next));
        o2.reserve(static_cast<std::size_t>(next));
        for (int c = 0; c < crossings(); ++c) {
            if (removed[static_cast<std::size_t>(c)]) continue;
            u2.push_back(under_in(c));
            o2.push_back(over_in(c));
            for (int k = 0; k < 4; ++k) {
                int m = mate(dart(c, k));
                if (removed[static_cast<std::size_t>(crossing_of(m))])
                    throw internal_error("Diagram: dangling mate after removal");
                m2[static_cast<std::size_t>(4 * newid[static_cast<std::size_t>(c)] + k)] =
                    4 * newid[static_cast<std::size_t>(crossing_of(m))] + port_of(m);
            }
        }
        under_in_ = std::move(u2);
        over_in_ = std::move(o2);
        mate_ = std::move(m2);
    }

    std::vector<int> under_in_;
    std::vector<int> over_in_;
    std::vector<int> mate_;
};

namespace detail {

struct Vec2 {
    Rat x, y;
};

inline int quadrant(const Vec2& v) {
    if (v.x.sign() > 0 && v.y.sign() >= 0) return 0;
    if (v.x.sign() <= 0 && v.y.sign() > 0) return 1;
    if (v.x.sign() < 0 && v.y.sign() <= 0) return 2;
    return 3;
}

/// Counterclockwise angular order starting just above the +x axis.
inline bool ccw_less(const Vec2& a, const Vec2& b) {
    int qa = quadrant(a), qb = quadrant(b);
    if (qa != qb) return qa < qb;
    Rat cross = a.x * b.y - a.y * b.x;
    return cross.sign() > 0;
}

} // namespace detail

/// Orthogonal projection of a closed polygon along z, tilted by an exact
/// rational shear (x - e1 z, y - e2 z) to break the parallel-overlap
/// degeneracies lattice closures always have. Crossings must be transverse;
/// z-parallel segments shrink to stubs that cross nothing on a lattice.
inline Diagram project_closed_polygon(const std::vector<std::array<Rat, 3>>& poly) {
    const int m = static_cast<int>(poly.size());
    if (m < 3) throw std::invalid_argument("project: need at least 3 vertices");

    // Tilt ratio: (e1, e2) = (k, 1) * delta must not be parallel to any
    // projected segment direction, so displaced points leave the lines they
    // sat on instead of sliding along them.
    std::vector<std::array<Rat, 2>> seg_dirs;
    for (int i = 0; i < m; ++i) {
        const auto& a = poly[static_cast<std::size_t>(i)];
        const auto& b = poly[static_cast<std::size_t>((i + 1) % m)];
        Rat dx = b[0] - a[0], dy = b[1] - a[1];
        if (dx.sign() != 0 || dy.sign() != 0) seg_dirs.push_back({dx, dy});
    }
    std::int64_t k = 0;
    for (std::int64_t cand : {2, 3, 5, 7, 11, 13, 17, 19, 23}) {
        bool parallel = false;
        for (const auto& d : seg_dirs)
            if ((d[0] - d[1] * Rat(cand)).sign() == 0) { parallel = true; break; }
        if (!parallel) { k = cand; break; }
    }
    if (k == 0) throw internal_error("project: no usable tilt direction");

    // delta bound: tilt displacement must stay below half the least positive
    // point-to-segment clearance in the untilted projection
    auto point_seg_dist_sq = [](const Rat& px, const Rat& py, const Rat& ax, const Rat& ay,
                                const Rat& bx, const Rat& by) {
        Rat dx = bx - ax, dy = by - ay;
        Rat len2 = dx * dx + dy * dy;
        Rat vx = px - ax, vy = py - ay;
        if (len2.sign() == 0) return vx * vx + vy * vy;
        Rat t = (vx * dx + vy * dy) / len2;
        if (t < Rat(0)) t = Rat(0);
        if (t > Rat(1)) t = Rat(1);
        Rat qx = ax + t * dx - px, qy = ay + t * dy - py;
        return qx * qx + qy * qy;
    };
    std::optional<Rat> dmin_sq;
    for (int i = 0; i < m; ++i) {
        const auto& p = poly[static_cast<std::size_t>(i)];
        for (int j = 0; j < m; ++j) {
            if (j == i || (j + 1) % m == i) continue;  // incident segments
            const auto& a = poly[static_cast<std::size_t>(j)];
            const auto& b = poly[static_cast<std::size_t>((j + 1) % m)];
            Rat d2 = point_seg_dist_sq(p[0], p[1], a[0], a[1], b[0], b[1]);
            if (d2.sign() > 0 && (!dmin_sq || d2 < *dmin_sq)) dmin_sq = d2;
        }
    }
    if (!dmin_sq)
        throw std::invalid_argument("project: projection collapses to a line");
    std::vector<Rat> zs;
    for (const auto& p : poly) zs.push_back(p[2]);
    Rat zspan = *std::max_element(zs.begin(), zs.end()) -
                *std::min_element(zs.begin(), zs.end()) + Rat(1);
    // rational lower bound on sqrt(dmin_sq)/4, on a grid fine enough to
    // resolve the clearance
    Rat clear(0);
    {
        Rat q = *dmin_sq / Rat(16);
        std::int64_t r = 0, grid = 1 << 16;
        for (; grid <= (std::int64_t{1} << 56); grid <<= 8) {
            __int128 scaled = static_cast<__int128>(q.num()) * grid * grid / q.den();
            r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(scaled)));
            while (static_cast<__int128>(r + 1) * (r + 1) <= scaled) ++r;
            while (r > 0 && static_cast<__int128>(r) * r > scaled) --r;
            if (r > 0) break;
        }
        if (r == 0) throw internal_error("project: clearance too small for the tilt grid");
        clear = Rat(r, grid);
    }
    Rat delta = clear / (Rat(k + 1) * zspan);
    Rat e1 = Rat(k) * delta;
    Rat e2 = delta;

    auto proj = [&](const std::array<Rat, 3>& p) {
        return detail::Vec2{p[0] - e1 * p[2], p[1] - e2 * p[2]};
    };

    struct Visit {
        Rat t;            // parameter along the segment
        int crossing;
        bool over;
        detail::Vec2 dir; // tilted 2D direction of this strand
    };
    struct CrossingRec {
        std::array<int, 2> seg;
    };

    std::vector<std::vector<Visit>> by_seg(static_cast<std::size_t>(m));
    int n_crossings = 0;
    for (int i = 0; i < m; ++i) {
        detail::Vec2 a = proj(poly[static_cast<std::size_t>(i)]);
        detail::Vec2 b = proj(poly[static_cast<std::size_t>((i + 1) % m)]);
        detail::Vec2 da{b.x - a.x, b.y - a.y};
        for (int j = i + 1; j < m; ++j) {
            detail::Vec2 c = proj(poly[static_cast<std::size_t>(j)]);
            detail::Vec2 d = proj(poly[static_cast<std::size_t>((j + 1) % m)]);
            detail::Vec2 dc{d.x - c.x, d.y - c.y};
            Rat det = da.x * dc.y - da.y * dc.x;
            if (det.sign() == 0) continue;
            Rat rx = c.x - a.x, ry = c.y - a.y;
            Rat s = (rx * dc.y - ry * dc.x) / det;
            Rat t = (rx * da.y - ry * da.x) / det;
            bool s_interior = Rat(0) < s && s < Rat(1);
            bool t_interior = Rat(0) < t && t < Rat(1);
            bool s_boundary = s == Rat(0) || s == Rat(1);
            bool t_boundary = t == Rat(0) || t == Rat(1);
            if ((s_interior && t_boundary) || (t_interior && s_boundary))
                throw std::invalid_argument(
                    "project: degenerate projection (endpoint on strand)");
            if (!s_interior || !t_interior) continue;
            // z at the crossing decides over/under
            Rat za = poly[static_cast<std::size_t>(i)][2] +
                     s * (poly[static_cast<std::size_t>((i + 1) % m)][2] -
                          poly[static_cast<std::size_t>(i)][2]);
            Rat zc = poly[static_cast<std::size_t>(j)][2] +
                     t * (poly[static_cast<std::size_t>((j + 1) % m)][2] -
                          poly[static_cast<std::size_t>(j)][2]);
            if (za == zc)
                throw std::invalid_argument("project: strands meet in space");
            int id = n_crossings++;
            by_seg[static_cast<std::size_t>(i)].push_back({s, id, za > zc, da});
            by_seg[static_cast<std::size_t>(j)].push_back({t, id, zc > za, dc});
        }
    }
    if (n_crossings == 0) {
        return Diagram::from_visits(0, {}, {});
    }

    // traversal order
    std::vector<std::pair<int, bool>> visits;
    std::vector<detail::Vec2> dirs;
    for (int i = 0; i < m; ++i) {
        auto& vs = by_seg[static_cast<std::size_t>(i)];
        std::sort(vs.begin(), vs.end(), [](const Visit& a, const Visit& b) { return a.t < b.t; });
        for (const auto& v : vs) {
            visits.emplace_back(v.crossing, v.over);
            dirs.push_back(v.dir);
        }
    }

    // ports: per crossing sort the four attachment directions CCW
    struct Attach {
        detail::Vec2 dir;
        int visit;
        bool incoming;
    };
    std::vector<std::vector<Attach>> att(static_cast<std::size_t>(n_crossings));
    for (int k = 0; k < static_cast<int>(visits.size()); ++k) {
        int c = visits[static_cast<std::size_t>(k)].first;
        const auto& d = dirs[static_cast<std::size_t>(k)];
        att[static_cast<std::size_t>(c)].push_back({{-d.x, -d.y}, k, true});
        att[static_cast<std::size_t>(c)].push_back({{d.x, d.y}, k, false});
    }
    std::vector<int> in_port(visits.size(), -1);
    for (int c = 0; c < n_crossings; ++c) {
        auto& a = att[static_cast<std::size_t>(c)];
        if (a.size() != 4) throw internal_error("project: crossing without two passages");
        std::sort(a.begin(), a.end(), [](const Attach& p, const Attach& q) {
            return detail::ccw_less(p.dir, q.dir);
        });
        for (int p = 0; p < 4; ++p)
            if (a[static_cast<std::size_t>(p)].incoming)
                in_port[static_cast<std::size_t>(a[static_cast<std::size_t>(p)].visit)] = p;
    }
    return Diagram::from_visits(n_crossings, visits, in_port);
}

/// Diagram of a lattice knot by projection along z.
inline Diagram project(const LatticeKnot& k) {
    std::vector<std::array<Rat, 3>> poly;
    poly.reserve(static_cast<std::size_t>(k.segments()));
    for (const auto& v : k.vertices)
        poly.push_back({Rat(v[0]), Rat(v[1]), Rat(v[2])});
    return project_closed_polygon(poly);
}

/// Close an open curve from (0,0,0) to (1,1,1) with an arc that stays above
/// every vertex and outside the unit square in projection, so it crosses
/// nothing: out at x=2, around at y=-1, back in at x=0. The result feeds
/// project_closed_polygon.
inline std::vector<std::array<Rat, 3>>
close_open_polyline(std::vector<std::array<Rat, 3>> pts) {
    if (pts.size() < 2 || pts.front() != std::array<Rat, 3>{Rat(0), Rat(0), Rat(0)} ||
        pts.back() != std::array<Rat, 3>{Rat(1), Rat(1), Rat(1)})
        throw std::invalid_argument("close_open_polyline: endpoints must be the cube diagonal");
    Rat h(3);
    pts.push_back({Rat(1), Rat(1), h});
    pts.push_back({Rat(2), Rat(1), h});
    pts.push_back({Rat(2), Rat(-1), h});
    pts.push_back({Rat(0), Rat(-1), h});
    pts.push_back({Rat(0), Rat(0), h});
    // final drop to (0,0,0) closes the cycle implicitly
    return pts;
}

} // namespace plumber
