#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "plumber/cell.hpp"
#include "plumber/singularity.hpp"

namespace plumber {

/// Topological label attached to a census component.
struct KnotLabel {
    std::int64_t determinant = 1;
    int signature = 0;
    std::string type_name = "unrecognized";
    std::string jones;  // optional, empty when not computed

    bool operator==(const KnotLabel&) const = default;
};

/// Precomputed tables for one move count: all (n-1)! words, inverses, and the
/// rank of each adjacent-swap image. Cell index = (rx*F + ry)*F + rz, which
/// orders cells lexicographically by word triple.
class CellTables {
  public:
    explicit CellTables(int n) : n_(n), m_(n - 1) {
        fact_ = Perm::factorial_of(m_);
        perms_.reserve(fact_);
        invs_.reserve(fact_);
        for (std::uint64_t r = 0; r < fact_; ++r) {
            perms_.push_back(Perm::from_lex_rank(r, m_));
            invs_.push_back(perms_.back().inverse());
        }
        swap_rank_.assign(fact_ * static_cast<std::uint64_t>(std::max(0, m_ - 1)), 0);
        for (std::uint64_t r = 0; r < fact_; ++r)
            for (int i = 1; i < m_; ++i)
                swap_rank_[r * static_cast<std::uint64_t>(m_ - 1) +
                           static_cast<std::uint64_t>(i - 1)] =
                    perms_[r].swap_positions(i).lex_rank();
    }

    int n() const { return n_; }
    int m() const { return m_; }
    std::uint64_t factorial() const { return fact_; }
    std::uint64_t total_cells() const { return fact_ * fact_ * fact_; }
    const Perm& perm(std::uint64_t r) const { return perms_[r]; }
    const Perm& inv(std::uint64_t r) const { return invs_[r]; }
    std::uint64_t swapped(std::uint64_t r, int i) const {
        return swap_rank_[r * static_cast<std::uint64_t>(m_ - 1) +
                          static_cast<std::uint64_t>(i - 1)];
    }

    std::uint64_t index_of(const CellName& c) const {
        return (c.sigma(Axis::X).lex_rank() * fact_ + c.sigma(Axis::Y).lex_rank()) * fact_ +
               c.sigma(Axis::Z).lex_rank();
    }
    CellName cell_at(std::uint64_t idx) const {
        std::uint64_t rz = idx % fact_;
        std::uint64_t ry = (idx / fact_) % fact_;
        std::uint64_t rx = idx / (fact_ * fact_);
        return CellName(n_, {perms_[rx], perms_[ry], perms_[rz]});
    }

    /// Neighbor indices of a cell: one per appearing transposition per axis
    /// that does not produce an intersection.
    void neighbor_indices(std::uint64_t idx, std::vector<std::uint64_t>& out) const {
        out.clear();
        std::uint64_t rz = idx % fact_;
        std::uint64_t ry = (idx / fact_) % fact_;
        std::uint64_t rx = idx / (fact_ * fact_);
        const Perm& wx = perms_[rx];
        const Perm& wy = perms_[ry];
        const Perm& wz = perms_[rz];
        const Perm& ix = invs_[rx];
        const Perm& iy = invs_[ry];
        const Perm& iz = invs_[rz];
        for (int axis = 0; axis < 3; ++axis) {
            const Perm& w = axis == 0 ? wx : axis == 1 ? wy : wz;
            std::uint64_t r = axis == 0 ? rx : axis == 1 ? ry : rz;
            for (int i = 1; i < m_; ++i) {
                int a = w(i), b = w(i + 1);
                if (produces_intersection_words(n_, static_cast<Axis>(axis), a, b, ix, iy, iz))
                    continue;
                std::uint64_t rs = swapped(r, i);
                std::uint64_t j = axis == 0 ? (rs * fact_ + ry) * fact_ + rz
                                : axis == 1 ? (rx * fact_ + rs) * fact_ + rz
                                            : (rx * fact_ + ry) * fact_ + rs;
                out.push_back(j);
            }
        }
    }

  private:
    int n_;
    int m_;
    std::uint64_t fact_ = 1;
    std::vector<Perm> perms_;
    std::vector<Perm> invs_;
    std::vector<std::uint64_t> swap_rank_;
};

/// Elementary-geometric-isotopy neighbors of a top cell.
inline std::vector<CellName> neighbors(const CellName& c) {
    if (!c.is_top())
        throw std::invalid_argument("neighbors: cell must be top-dimensional");
    std::vector<CellName> out;
    Perm inv_x = c.sigma(Axis::X).inverse();
    Perm inv_y = c.sigma(Axis::Y).inverse();
    Perm inv_z = c.sigma(Axis::Z).inverse();
    for (int axis = 0; axis < 3; ++axis) {
        Axis ax = static_cast<Axis>(axis);
        const Perm& w = c.sigma(ax);
        for (int i = 1; i < c.n() - 1; ++i) {
            if (produces_intersection_words(c.n(), ax, w(i), w(i + 1), inv_x, inv_y, inv_z))
                continue;
            std::array<Perm, 3> sig = {c.sigma(Axis::X), c.sigma(Axis::Y), c.sigma(Axis::Z)};
            sig[static_cast<std::size_t>(axis)] = w.swap_positions(i);
            out.emplace_back(c.n(), std::move(sig));
        }
    }
    return out;
}

/// Word reversal on one axis. For the y axis this is a graph automorphism of
/// the isotopy graph and realizes the chirality pairing of the census; the x
/// and z reversals do not respect the pinned endpoints v_0, v_n and are
/// provided for completeness only.
inline CellName mirror(const CellName& c, Axis axis) {
    if (!c.is_top())
        throw std::invalid_argument("mirror: cell must be top-dimensional");
    std::array<Perm, 3> sig = {c.sigma(Axis::X), c.sigma(Axis::Y), c.sigma(Axis::Z)};
    sig[static_cast<std::size_t>(axis)] = sig[static_cast<std::size_t>(axis)].reverse_word();
    return CellName(c.n(), std::move(sig));
}

inline CellName mirror(const CellName& c) { return mirror(c, Axis::Y); }

struct CensusComponent {
    std::uint64_t size = 0;
    std::uint64_t representative = 0;   // least cell index = lex-least word triple
    std::optional<KnotLabel> label;
};

struct CensusOptions {
    int threads = 1;
    std::uint64_t memory_budget = 2ull << 30;  // bytes for the union-find array
};

/// Connected components of the elementary-geometric-isotopy graph over all
/// ((n-1)!)^3 top cells, via a full edge sweep into array-backed union-find.
/// Components are sorted by (size desc, representative asc); the result does
/// not depend on thread count.
class Census {
  public:
    static Census run(int n, const CensusOptions& opt = {}) {
        Census c(n);
        c.compute(opt);
        return c;
    }

    int n() const { return tables_.n(); }
    std::uint64_t total_cells() const { return tables_.total_cells(); }
    const CellTables& tables() const { return tables_; }
    const std::vector<CensusComponent>& components() const { return components_; }
    std::vector<CensusComponent>& components() { return components_; }

    std::uint64_t component_root(std::uint64_t idx) const {
        std::uint64_t x = idx;
        while (parent_[x] != x) x = parent_[x];
        return x;
    }
    std::uint64_t component_size(std::uint64_t idx) const {
        return size_of_root_.at(component_root(idx));
    }
    bool same_component(std::uint64_t a, std::uint64_t b) const {
        return component_root(a) == component_root(b);
    }

  private:
    explicit Census(int n) : tables_(n) {}

    void compute(const CensusOptions& opt) {
        const std::uint64_t total = tables_.total_cells();
        if (total * sizeof(std::uint64_t) > opt.memory_budget)
            throw resource_limit_error(
                "census: union-find for n=" + std::to_string(tables_.n()) +
                " needs " + std::to_string(total * sizeof(std::uint64_t)) +
                " bytes, over the configured budget");
        parent_.resize(total);
        for (std::uint64_t i = 0; i < total; ++i) parent_[i] = i;

        const int threads = std::max(1, opt.threads);
        const std::uint64_t chunk = 1 << 16;
        std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> buffers(
            static_cast<std::size_t>(threads));

        for (std::uint64_t base = 0; base < total; base += chunk * threads) {
            auto worker = [&](int t) {
                auto& buf = buffers[static_cast<std::size_t>(t)];
                buf.clear();
                std::uint64_t lo = base + chunk * static_cast<std::uint64_t>(t);
                std::uint64_t hi = std::min(total, lo + chunk);
                std::vector<std::uint64_t> nb;
                for (std::uint64_t i = lo; i < hi; ++i) {
                    tables_.neighbor_indices(i, nb);
                    for (std::uint64_t j : nb)
                        if (j > i) buf.emplace_back(i, j);
                }
            };
            if (threads == 1) {
                worker(0);
            } else {
                std::vector<std::thread> pool;
                for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
                for (auto& th : pool) th.join();
            }
            for (auto& buf : buffers)
                for (auto [i, j] : buf) unite(i, j);
        }

        size_of_root_.clear();
        for (std::uint64_t i = 0; i < total; ++i) ++size_of_root_[find(i)];
        components_.clear();
        components_.reserve(size_of_root_.size());
        for (auto& [root, sz] : size_of_root_)
            components_.push_back({sz, root, std::nullopt});
        std::sort(components_.begin(), components_.end(), [](const auto& a, const auto& b) {
            if (a.size != b.size) return a.size > b.size;
            return a.representative < b.representative;
        });
    }

    std::uint64_t find(std::uint64_t x) {
        std::uint64_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            std::uint64_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }
    void unite(std::uint64_t a, std::uint64_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // keep the least index as root
        parent_[b] = a;
    }

    CellTables tables_;
    std::vector<std::uint64_t> parent_;
    std::unordered_map<std::uint64_t, std::uint64_t> size_of_root_;
    std::vector<CensusComponent> components_;
};

/// Connectivity query without a cached census: bidirectional breadth-first
/// search on the implicit neighbor graph.
inline bool same_component(const CellName& a, const CellName& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("same_component: move counts differ");
    if (!a.is_top() || !b.is_top())
        throw std::invalid_argument("same_component: cells must be top-dimensional");
    CellTables tables(a.n());
    std::uint64_t ia = tables.index_of(a);
    std::uint64_t ib = tables.index_of(b);
    if (ia == ib) return true;

    std::unordered_set<std::uint64_t> seen_a{ia}, seen_b{ib};
    std::deque<std::uint64_t> qa{ia}, qb{ib};
    std::vector<std::uint64_t> nb;
    while (!qa.empty() && !qb.empty()) {
        auto expand = [&](std::deque<std::uint64_t>& q,
                          std::unordered_set<std::uint64_t>& mine,
                          const std::unordered_set<std::uint64_t>& other) -> int {
            std::size_t layer = q.size();
            for (std::size_t s = 0; s < layer; ++s) {
                std::uint64_t cur = q.front();
                q.pop_front();
                tables.neighbor_indices(cur, nb);
                for (std::uint64_t j : nb) {
                    if (other.count(j)) return 1;
                    if (mine.insert(j).second) q.push_back(j);
                }
            }
            return 0;
        };
        if (qa.size() <= qb.size()) {
            if (expand(qa, seen_a, seen_b)) return true;
            if (qa.empty()) return false;
        } else {
            if (expand(qb, seen_b, seen_a)) return true;
            if (qb.empty()) return false;
        }
    }
    return false;
}

} // namespace plumber
