#pragma once

#include <array>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plumber/permutation.hpp"
#include "plumber/rational.hpp"

namespace plumber {

enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline char axis_letter(Axis a) { return a == Axis::X ? 'x' : a == Axis::Y ? 'y' : 'z'; }
inline Axis axis_from_letter(char c) {
    switch (c) {
        case 'x': return Axis::X;
        case 'y': return Axis::Y;
        case 'z': return Axis::Z;
        default: throw std::invalid_argument("axis letter must be x, y or z");
    }
}

/// A point of P_n: vertices v_0..v_n in [0,1]^3 with v_0=(0,0,0) and
/// v_n=(1,1,1). Coordinates are exact rationals so face membership and
/// singularity tests need no epsilon.
struct CurvePoint {
    std::vector<std::array<Rat, 3>> vertices;

    int moves() const { return static_cast<int>(vertices.size()) - 1; }
    const Rat& coord(int i, Axis a) const {
        return vertices[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
    }
    Rat& coord(int i, Axis a) {
        return vertices[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
    }

    static CurvePoint with_moves(int n) {
        if (n < 1) throw std::invalid_argument("CurvePoint: need n >= 1");
        CurvePoint p;
        p.vertices.assign(static_cast<std::size_t>(n) + 1, {Rat(0), Rat(0), Rat(0)});
        p.vertices.back() = {Rat(1), Rat(1), Rat(1)};
        return p;
    }

    bool endpoints_valid() const {
        return !vertices.empty() &&
               vertices.front() == std::array<Rat, 3>{Rat(0), Rat(0), Rat(0)} &&
               vertices.back() == std::array<Rat, 3>{Rat(1), Rat(1), Rat(1)};
    }
};

/// Name of a cell of P_n of any codimension: a sigma triple in Sigma_{n-1}
/// plus degeneracy permutations rho (identity for top cells). Each rho_i must
/// appear in sigma_i; the equality blocks of the cell are the cycle supports.
class CellName {
  public:
    CellName(int n, std::array<Perm, 3> sigma)
        : CellName(n, std::move(sigma),
                   {Perm::identity(n - 1), Perm::identity(n - 1), Perm::identity(n - 1)}) {}

    CellName(int n, std::array<Perm, 3> sigma, std::array<Perm, 3> rho)
        : n_(n), sigma_(std::move(sigma)), rho_(std::move(rho)) {
        if (n_ < 2) throw std::invalid_argument("CellName: need n >= 2");
        for (int a = 0; a < 3; ++a) {
            if (sigma_[a].size() != n_ - 1 || rho_[a].size() != n_ - 1)
                throw std::invalid_argument("CellName: permutation sizes must be n-1");
            auto dec = appears_in(rho_[a], sigma_[a]);
            if (!dec)
                throw std::invalid_argument("CellName: rho does not appear in sigma");
            dec_[a] = std::move(*dec);
        }
    }

    int n() const { return n_; }
    const Perm& sigma(Axis a) const { return sigma_[static_cast<std::size_t>(a)]; }
    const Perm& rho(Axis a) const { return rho_[static_cast<std::size_t>(a)]; }
    const AppearingDecomposition& decomposition(Axis a) const {
        return dec_[static_cast<std::size_t>(a)];
    }

    int codimension() const {
        return dec_[0].length() + dec_[1].length() + dec_[2].length();
    }
    int dimension() const { return 3 * n_ - 3 - codimension(); }
    bool is_top() const { return codimension() == 0; }

    bool operator==(const CellName& o) const {
        return n_ == o.n_ && sigma_ == o.sigma_ && rho_ == o.rho_;
    }

    /// "[1342_x,2413_y,2413_z]" with an optional ";(1 2)_x..." degeneracy
    /// suffix for positive-codimension cells.
    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (int a = 0; a < 3; ++a) {
            if (a) os << ',';
            os << sigma_[static_cast<std::size_t>(a)].str() << '_'
               << axis_letter(static_cast<Axis>(a));
        }
        os << ']';
        for (int a = 0; a < 3; ++a) {
            if (rho_[static_cast<std::size_t>(a)].is_identity()) continue;
            for (const auto& cyc : dec_[static_cast<std::size_t>(a)].cycles) {
                if (cyc.values.size() < 2) continue;
                os << ";(";
                for (std::size_t i = 0; i < cyc.values.size(); ++i) {
                    if (i) os << ' ';
                    os << cyc.values[i];
                }
                os << ")_" << axis_letter(static_cast<Axis>(a));
            }
        }
        return os.str();
    }

    static CellName parse(const std::string& text, int n);

  private:
    int n_;
    std::array<Perm, 3> sigma_;
    std::array<Perm, 3> rho_;
    std::array<AppearingDecomposition, 3> dec_;
};

/// Number of redundant labels of a cell: the product over disjoint cycles of
/// (cycle length + 1)!, counting the top cells whose closure contains it.
inline std::uint64_t label_count(const CellName& c) {
    std::uint64_t total = 1;
    for (int a = 0; a < 3; ++a)
        for (const auto& cyc : c.decomposition(static_cast<Axis>(a)).cycles)
            total *= Perm::factorial_of(cyc.transposition_count() + 1);
    return total;
}

/// Deterministic representative among the equivalent labels: each equality
/// block is written increasingly in sigma, and each cycle as the increasing
/// cycle on its block.
inline CellName canonical_name(const CellName& c) {
    std::array<Perm, 3> sig, rho;
    for (int a = 0; a < 3; ++a) {
        Axis ax = static_cast<Axis>(a);
        std::vector<int> word = c.sigma(ax).word();
        std::vector<int> rho_word(word.size());
        for (std::size_t i = 0; i < word.size(); ++i)
            rho_word[i] = static_cast<int>(i) + 1;
        for (const auto& cyc : c.decomposition(ax).cycles) {
            if (cyc.values.size() < 2) continue;
            std::vector<int> vals = cyc.values;
            std::sort(vals.begin(), vals.end());
            for (std::size_t i = 0; i < vals.size(); ++i)
                word[static_cast<std::size_t>(cyc.block_start - 1) + i] = vals[i];
            for (std::size_t i = 0; i < vals.size(); ++i) {
                int from = vals[i];
                int to = vals[(i + 1) % vals.size()];
                rho_word[static_cast<std::size_t>(from - 1)] = to;
            }
        }
        sig[static_cast<std::size_t>(a)] = Perm(std::move(word));
        rho[static_cast<std::size_t>(a)] = Perm(std::move(rho_word));
    }
    return CellName(c.n(), std::move(sig), std::move(rho));
}

/// The 3(n-2) codimension-one faces of a top cell, one per appearing
/// transposition per axis.
inline std::vector<CellName> codim1_faces(const CellName& c) {
    if (!c.is_top())
        throw std::invalid_argument("codim1_faces: cell must be top-dimensional");
    std::vector<CellName> out;
    const int m = c.n() - 1;
    for (int a = 0; a < 3; ++a) {
        Axis ax = static_cast<Axis>(a);
        for (int i = 1; i < m; ++i) {
            std::vector<int> rho_word(static_cast<std::size_t>(m));
            for (int v = 1; v <= m; ++v) rho_word[static_cast<std::size_t>(v - 1)] = v;
            int va = c.sigma(ax)(i), vb = c.sigma(ax)(i + 1);
            std::swap(rho_word[static_cast<std::size_t>(va - 1)],
                      rho_word[static_cast<std::size_t>(vb - 1)]);
            std::array<Perm, 3> rho = {Perm::identity(m), Perm::identity(m), Perm::identity(m)};
            rho[static_cast<std::size_t>(a)] = Perm(std::move(rho_word));
            out.emplace_back(c.n(), std::array<Perm, 3>{c.sigma(Axis::X), c.sigma(Axis::Y), c.sigma(Axis::Z)},
                             std::move(rho));
        }
    }
    return out;
}

/// The representative curve of a cell: coordinate i on each axis is the index
/// of the cycle containing i (cycles ordered by sigma-position) over the
/// number of distinct coordinate planes.
inline CurvePoint representative_point(const CellName& c) {
    const int n = c.n();
    CurvePoint p = CurvePoint::with_moves(n);
    for (int a = 0; a < 3; ++a) {
        Axis ax = static_cast<Axis>(a);
        const auto& dec = c.decomposition(ax);
        const int planes = n - dec.length();
        std::vector<int> cycle_index(static_cast<std::size_t>(n), 0);
        int k = 0;
        for (const auto& cyc : dec.cycles) {
            ++k;
            for (int v : cyc.values) cycle_index[static_cast<std::size_t>(v - 1)] = k;
        }
        for (int i = 1; i <= n - 1; ++i)
            p.coord(i, ax) = Rat(cycle_index[static_cast<std::size_t>(i - 1)], planes);
    }
    return p;
}

/// The cell containing a point: sigma orders each axis's coordinates, ties
/// become equality blocks (canonical increasing cycles). Requires interior
/// coordinates in (0,1).
inline CellName cell_of(const CurvePoint& v) {
    const int n = v.moves();
    if (!v.endpoints_valid())
        throw std::invalid_argument("cell_of: endpoints must be (0,0,0) and (1,1,1)");
    std::array<Perm, 3> sig, rho;
    for (int a = 0; a < 3; ++a) {
        Axis ax = static_cast<Axis>(a);
        std::vector<int> idx(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n - 1; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
        std::stable_sort(idx.begin(), idx.end(), [&](int p, int q) {
            if (v.coord(p, ax) != v.coord(q, ax)) return v.coord(p, ax) < v.coord(q, ax);
            return p < q;
        });
        for (int i = 1; i <= n - 1; ++i) {
            const Rat& cc = v.coord(i, ax);
            if (!(Rat(0) < cc) || !(cc < Rat(1)))
                throw std::invalid_argument("cell_of: interior coordinates must lie in (0,1)");
        }
        std::vector<int> rho_word(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n - 1; ++i) rho_word[static_cast<std::size_t>(i)] = i + 1;
        std::size_t i = 0;
        while (i < idx.size()) {
            std::size_t j = i;
            while (j + 1 < idx.size() &&
                   v.coord(idx[j + 1], ax) == v.coord(idx[i], ax)) ++j;
            if (j > i) {
                for (std::size_t t = i; t <= j; ++t) {
                    int from = idx[t];
                    int to = idx[t + 1 <= j ? t + 1 : i];
                    rho_word[static_cast<std::size_t>(from - 1)] = to;
                }
            }
            i = j + 1;
        }
        sig[static_cast<std::size_t>(a)] = Perm(std::move(idx));
        rho[static_cast<std::size_t>(a)] = Perm(std::move(rho_word));
    }
    return CellName(n, std::move(sig), std::move(rho));
}

inline CellName CellName::parse(const std::string& text, int n) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s.front() != '[')
        throw std::invalid_argument("CellName::parse: expected '['");
    auto close = s.find(']');
    if (close == std::string::npos)
        throw std::invalid_argument("CellName::parse: missing ']'");
    std::string body = s.substr(1, close - 1);
    std::array<Perm, 3> sig = {Perm::identity(n - 1), Perm::identity(n - 1), Perm::identity(n - 1)};
    std::array<bool, 3> seen = {false, false, false};
    std::size_t pos = 0;
    for (int part = 0; part < 3; ++part) {
        auto comma = body.find(',', pos);
        std::string piece = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (piece.size() < 3 || piece[piece.size() - 2] != '_')
            throw std::invalid_argument("CellName::parse: expected WORD_axis");
        Axis ax = axis_from_letter(piece.back());
        Perm w = Perm::parse(piece.substr(0, piece.size() - 2));
        if (w.size() != n - 1)
            throw std::invalid_argument("CellName::parse: word size does not match n");
        sig[static_cast<std::size_t>(ax)] = std::move(w);
        seen[static_cast<std::size_t>(ax)] = true;
        if (comma == std::string::npos) { pos = body.size(); break; }
        pos = comma + 1;
    }
    if (!(seen[0] && seen[1] && seen[2]))
        throw std::invalid_argument("CellName::parse: need all three axes");

    std::array<Perm, 3> rho = {Perm::identity(n - 1), Perm::identity(n - 1), Perm::identity(n - 1)};
    std::size_t rest = close + 1;
    while (rest < s.size()) {
        if (s[rest] != ';')
            throw std::invalid_argument("CellName::parse: expected ';' before degeneracy");
        auto open = s.find('(', rest);
        auto closep = s.find(')', rest);
        if (open == std::string::npos || closep == std::string::npos || closep + 2 >= s.size() + 0)
            throw std::invalid_argument("CellName::parse: bad degeneracy cycle");
        if (closep + 2 > s.size() || s[closep + 1] != '_')
            throw std::invalid_argument("CellName::parse: degeneracy needs _axis");
        Axis ax = axis_from_letter(s[closep + 2]);
        std::string cyc = s.substr(open + 1, closep - open - 1);
        // values separated by spaces were stripped; accept both digits-run and
        // comma-separated
        std::vector<int> vals;
        for (char c : cyc) {
            if (c == ',') continue;
            if (c < '1' || c > '9')
                throw std::invalid_argument("CellName::parse: bad cycle value");
            vals.push_back(c - '0');
        }
        if (vals.size() < 2)
            throw std::invalid_argument("CellName::parse: cycle needs >= 2 values");
        std::vector<int> rho_word = rho[static_cast<std::size_t>(ax)].word();
        for (std::size_t i = 0; i < vals.size(); ++i) {
            int from = vals[i];
            int to = vals[(i + 1) % vals.size()];
            if (from < 1 || from > n - 1 || rho_word[static_cast<std::size_t>(from - 1)] != from)
                throw std::invalid_argument("CellName::parse: overlapping or bad cycles");
            rho_word[static_cast<std::size_t>(from - 1)] = to;
        }
        rho[static_cast<std::size_t>(ax)] = Perm(std::move(rho_word));
        rest = closep + 3;
    }
    // raw labels are accepted and canonicalized immediately
    return canonical_name(CellName(n, std::move(sig), std::move(rho)));
}

} // namespace plumber
