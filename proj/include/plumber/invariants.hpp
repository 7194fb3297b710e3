#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "plumber/diagram.hpp"
#include "plumber/isotopy.hpp"
#include "plumber/lattice.hpp"

namespace plumber {

/// Integer Laurent polynomial in t.
struct Laurent {
    std::map<int, std::int64_t> coeff;  // exponent -> coefficient, no zeros

    void add(int e, std::int64_t c) {
        auto it = coeff.find(e);
        if (it == coeff.end()) {
            if (c != 0) coeff[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeff.erase(it);
        }
    }
    Laurent inverted() const {  // t -> 1/t
        Laurent out;
        for (auto [e, c] : coeff) out.coeff[-e] = c;
        return out;
    }
    bool operator==(const Laurent&) const = default;

    std::string str() const {
        if (coeff.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto [e, c] : coeff) {
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            std::int64_t a = c > 0 ? c : -c;
            first = false;
            if (a != 1 || e == 0) os << a;
            if (e != 0) {
                if (a != 1) os << "*";
                os << "t";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }
};

namespace detail {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// |det| of an integer matrix, fraction-free Bareiss elimination.
inline BigInt abs_det(std::vector<std::vector<BigInt>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(piv)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt num = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                 m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                             m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                                 m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = num / prev;
            }
        prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    BigInt d = m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
    if (sign < 0) d = -d;
    return d >= 0 ? d : BigInt(-d);
}

/// Signature of a symmetric integer matrix by exact congruence
/// diagonalization over the rationals.
inline int symmetric_signature(const std::vector<std::vector<BigInt>>& mi) {
    const int n = static_cast<int>(mi.size());
    std::vector<std::vector<BigRat>> m(static_cast<std::size_t>(n),
                                       std::vector<BigRat>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                BigRat(mi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    int pos = 0, neg = 0;
    for (int k = 0; k < n; ++k) {
        if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 0) { piv = i; break; }
            if (piv >= 0) {
                std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(piv)]);
                for (int i = 0; i < n; ++i)
                    std::swap(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                              m[static_cast<std::size_t>(i)][static_cast<std::size_t>(piv)]);
            } else {
                int off = -1;
                for (int j = k + 1; j < n; ++j)
                    if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] != 0) { off = j; break; }
                if (off < 0) continue;  // zero row/col: rank drop
                // congruence: add row/col `off` into k, making the diagonal 2a != 0
                for (int j = 0; j < n; ++j)
                    m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] +=
                        m[static_cast<std::size_t>(off)][static_cast<std::size_t>(j)];
                for (int i = 0; i < n; ++i)
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +=
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(off)];
            }
        }
        BigRat piv = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        if (piv == 0) continue;
        if (piv > 0) ++pos; else ++neg;
        for (int i = k + 1; i < n; ++i) {
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] == 0) continue;
            BigRat f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / piv;
            for (int j = k; j < n; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            for (int j = 0; j < n; ++j)
                m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -=
                    f * m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        }
    }
    return pos - neg;
}

} // namespace detail

/// Knot determinant and signature from a diagram: Goeritz matrix of the white
/// checkerboard regions with the Gordon-Litherland correction. Conventions
/// are pinned by the braid fixtures (sigma1^3 closure -> (3, -2)).
inline std::pair<std::int64_t, int> det_signature(const Diagram& dg) {
    const int n = dg.crossings();
    if (n == 0) return {1, 0};
    auto f = dg.faces();
    const int white = 0;

    // white faces, reindexed
    std::vector<int> widx(static_cast<std::size_t>(f.count), -1);
    int W = 0;
    for (int i = 0; i < f.count; ++i)
        if (f.color[static_cast<std::size_t>(i)] == white)
            widx[static_cast<std::size_t>(i)] = W++;

    std::vector<int> eta(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> white_corners(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        int u = dg.under_in(c);
        int fu1 = Diagram::corner_face(f, c, u);
        int fu2 = Diagram::corner_face(f, c, (u + 2) % 4);
        int fo1 = Diagram::corner_face(f, c, (u + 1) % 4);
        int fo2 = Diagram::corner_face(f, c, (u + 3) % 4);
        bool under_white = f.color[static_cast<std::size_t>(fu1)] == white;
        if (f.color[static_cast<std::size_t>(fu2)] != f.color[static_cast<std::size_t>(fu1)] ||
            f.color[static_cast<std::size_t>(fo1)] == f.color[static_cast<std::size_t>(fu1)])
            throw internal_error("det_signature: corner coloring not alternating");
        // +1 when the white corners follow the under-strand ports CCW
        eta[static_cast<std::size_t>(c)] = under_white ? 1 : -1;
        white_corners[static_cast<std::size_t>(c)] =
            under_white ? std::pair{fu1, fu2} : std::pair{fo1, fo2};
    }

    using detail::BigInt;
    std::vector<std::vector<BigInt>> G(static_cast<std::size_t>(W),
                                       std::vector<BigInt>(static_cast<std::size_t>(W), 0));
    for (int c = 0; c < n; ++c) {
        auto [fa, fb] = white_corners[static_cast<std::size_t>(c)];
        int i = widx[static_cast<std::size_t>(fa)];
        int j = widx[static_cast<std::size_t>(fb)];
        if (i == j) continue;
        G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= eta[static_cast<std::size_t>(c)];
        G[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -= eta[static_cast<std::size_t>(c)];
    }
    for (int i = 0; i < W; ++i) {
        BigInt s = 0;
        for (int j = 0; j < W; ++j)
            if (j != i) s += G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        G[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -s;
    }
    // delete white region 0
    std::vector<std::vector<BigInt>> M(static_cast<std::size_t>(std::max(0, W - 1)),
                                       std::vector<BigInt>(static_cast<std::size_t>(std::max(0, W - 1))));
    for (int i = 1; i < W; ++i)
        for (int j = 1; j < W; ++j)
            M[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

    BigInt det = detail::abs_det(M);
    int sig = detail::symmetric_signature(M);

    // Gordon-Litherland correction: crossings whose orientation sign agrees
    // with eta contribute eta to the defect.
    int mu = 0;
    for (int c = 0; c < n; ++c)
        if (dg.sign(c) * eta[static_cast<std::size_t>(c)] > 0) mu += eta[static_cast<std::size_t>(c)];

    if (det > BigInt(std::numeric_limits<std::int64_t>::max()))
        throw resource_limit_error("det_signature: determinant exceeds int64");
    return {static_cast<std::int64_t>(det), sig - mu};
}

/// Kauffman bracket state sum: Jones polynomial normalized to 1 on the
/// unknot, in the convention where the positive trefoil is t + t^3 - t^4.
inline Laurent jones(const Diagram& dg, int crossing_cap = 24) {
    const int n = dg.crossings();
    if (n > crossing_cap)
        throw resource_limit_error("jones: diagram exceeds the crossing cap");
    Laurent one;
    one.add(0, 1);
    if (n == 0) return one;

    // bracket in A: exponent -> coefficient
    std::map<int, std::int64_t> bracket;
    const int darts = 4 * n;
    std::vector<int> parent(static_cast<std::size_t>(darts));
    std::vector<int> stack;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
        for (int i = 0; i < darts; ++i) parent[static_cast<std::size_t>(i)] = i;
        auto unite = [&](int a, int b) {
            a = find(a); b = find(b);
            if (a != b) parent[static_cast<std::size_t>(a)] = b;
        };
        for (int d = 0; d < darts; ++d) unite(d, dg.mate(d));
        int a_count = 0;
        for (int c = 0; c < n; ++c) {
            int o = dg.over_in(c);
            bool smooth_a = ((state >> c) & 1) == 0;
            if (smooth_a) ++a_count;
            // A joins each over port with its clockwise neighbor
            int d1 = smooth_a ? (o + 3) % 4 : (o + 1) % 4;
            unite(Diagram::dart(c, o), Diagram::dart(c, d1));
            unite(Diagram::dart(c, (o + 2) % 4), Diagram::dart(c, (d1 + 2) % 4));
        }
        int loops = 0;
        for (int d = 0; d < darts; ++d)
            if (find(d) == d) ++loops;
        int expo = 2 * a_count - n;  // a - b
        // multiply by (-A^2 - A^-2)^(loops-1)
        std::map<int, std::int64_t> term{{expo, 1}};
        for (int l = 1; l < loops; ++l) {
            std::map<int, std::int64_t> nxt;
            for (auto [e, co] : term) {
                nxt[e + 2] -= co;
                nxt[e - 2] -= co;
            }
            term = std::move(nxt);
        }
        for (auto [e, co] : term) bracket[e] += co;
    }

    // f = (-A^3)^{-w} * bracket, then t = A^{-4}
    int w = dg.writhe();
    Laurent out;
    int s = (w % 2 == 0) ? 1 : -1;
    for (auto [e, co] : bracket) {
        if (co == 0) continue;
        int fe = e - 3 * w;
        if (fe % 4 != 0)
            throw internal_error("jones: exponent not divisible by 4");
        out.add(-fe / 4, s * co);
    }
    return out;
}

/// Map (determinant, signature) to the knot types the censuses contain.
inline std::string type_name_for(std::int64_t det, int sig) {
    if (det == 1 && sig == 0) return "0_1";
    if (det == 3 && sig == -2) return "3_1(R)";
    if (det == 3 && sig == 2) return "3_1(L)";
    if (det == 5 && sig == 0) return "4_1";
    if (det == 5 && sig == -4) return "5_1(R)";
    if (det == 5 && sig == 4) return "5_1(L)";
    if (det == 7 && sig == -2) return "5_2(R)";
    if (det == 7 && sig == 2) return "5_2(L)";
    return "unrecognized";
}

/// Full labeling pipeline for a top cell: lattice closure, projection,
/// Reidemeister reduction, Goeritz invariants, and the Jones cross-check
/// when the reduced diagram is within the cap.
inline KnotLabel classify(const CellName& c, int jones_cap = 24) {
    Diagram d = project(close_to_lattice(c)).simplified();
    auto [det, sig] = det_signature(d);
    if (det % 2 == 0 || sig % 2 != 0)
        throw internal_error("classify: knot invariants have impossible parity");
    KnotLabel label;
    label.determinant = det;
    label.signature = sig;
    label.type_name = type_name_for(det, sig);
    if (d.crossings() <= jones_cap) {
        try {
            label.jones = jones(d, jones_cap).str();
        } catch (const resource_limit_error&) {
        }
    }
    return label;
}

} // namespace plumber
