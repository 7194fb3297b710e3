#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plumber {

/// A permutation of {1..m} in one-line (word) notation, 1-indexed to match
/// the usual combinatorial conventions: word(i) is the image of position i.
class Perm {
  public:
    Perm() = default;

    explicit Perm(std::vector<int> word) : word_(std::move(word)) {
        if (!is_valid_word(word_))
            throw std::invalid_argument("Perm: word is not a permutation of {1..m}");
    }

    static Perm identity(int m) {
        std::vector<int> w(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = i + 1;
        return Perm(std::move(w), unchecked{});
    }

    int size() const { return static_cast<int>(word_.size()); }

    /// sigma(i), 1-based position.
    int operator()(int i) const { return word_[static_cast<std::size_t>(i - 1)]; }

    const std::vector<int>& word() const { return word_; }

    /// 1-based position of value v.
    int position(int v) const {
        for (int i = 1; i <= size(); ++i)
            if ((*this)(i) == v) return i;
        throw std::invalid_argument("Perm::position: value out of range");
    }

    Perm inverse() const {
        std::vector<int> w(word_.size());
        for (int i = 1; i <= size(); ++i)
            w[static_cast<std::size_t>(word_[static_cast<std::size_t>(i - 1)] - 1)] = i;
        return Perm(std::move(w), unchecked{});
    }

    /// Composition (a*b)(i) = a(b(i)).
    friend Perm operator*(const Perm& a, const Perm& b) {
        if (a.size() != b.size())
            throw std::invalid_argument("Perm: size mismatch in composition");
        std::vector<int> w(a.word_.size());
        for (int i = 1; i <= a.size(); ++i)
            w[static_cast<std::size_t>(i - 1)] = a(b(i));
        return Perm(std::move(w), unchecked{});
    }

    bool operator==(const Perm&) const = default;
    auto operator<=>(const Perm&) const = default;

    /// Coxeter (inversion) length of the word.
    int length() const {
        int inv = 0;
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (word_[static_cast<std::size_t>(i)] > word_[static_cast<std::size_t>(j)]) ++inv;
        return inv;
    }

    bool is_identity() const {
        for (int i = 1; i <= size(); ++i)
            if ((*this)(i) != i) return false;
        return true;
    }

    /// Word with positions i, i+1 exchanged (postcomposition by the appearing
    /// transposition at position i).
    Perm swap_positions(int i) const {
        if (i < 1 || i >= size())
            throw std::invalid_argument("Perm::swap_positions: index out of range");
        std::vector<int> w = word_;
        std::swap(w[static_cast<std::size_t>(i - 1)], w[static_cast<std::size_t>(i)]);
        return Perm(std::move(w), unchecked{});
    }

    /// Reversed word; realizes the coordinate reflection x -> 1-x on the
    /// positions this permutation orders.
    Perm reverse_word() const {
        std::vector<int> w(word_.rbegin(), word_.rend());
        return Perm(std::move(w), unchecked{});
    }

    /// Lexicographic rank of the word among all m! words (Lehmer code).
    std::uint64_t lex_rank() const {
        const int m = size();
        std::uint64_t rank = 0;
        for (int i = 0; i < m; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < m; ++j)
                if (word_[static_cast<std::size_t>(j)] < word_[static_cast<std::size_t>(i)]) ++smaller;
            rank = rank * static_cast<std::uint64_t>(m - i) + static_cast<std::uint64_t>(smaller);
        }
        return rank;
    }

    static Perm from_lex_rank(std::uint64_t rank, int m) {
        std::vector<int> pool;
        pool.reserve(static_cast<std::size_t>(m));
        for (int v = 1; v <= m; ++v) pool.push_back(v);
        std::vector<int> w;
        w.reserve(static_cast<std::size_t>(m));
        for (int i = m; i >= 1; --i) {
            std::uint64_t f = factorial_of(i - 1);
            std::uint64_t q = rank / f;
            rank %= f;
            w.push_back(pool[static_cast<std::size_t>(q)]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
        }
        return Perm(std::move(w), unchecked{});
    }

    /// One-line text form, e.g. "1342". Values must be single digits, which
    /// holds for every move count this library enumerates (m <= 9).
    std::string str() const {
        std::string s;
        for (int v : word_) {
            if (v > 9)
                throw std::invalid_argument("Perm::str: one-line form needs values <= 9");
            s += static_cast<char>('0' + v);
        }
        return s;
    }

    static Perm parse(const std::string& text) {
        std::vector<int> w;
        w.reserve(text.size());
        for (char c : text) {
            if (c < '1' || c > '9')
                throw std::invalid_argument("Perm::parse: bad character in word");
            w.push_back(c - '0');
        }
        return Perm(std::move(w));
    }

    static std::uint64_t factorial_of(int k) {
        std::uint64_t f = 1;
        for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
        return f;
    }

  private:
    struct unchecked {};
    Perm(std::vector<int> w, unchecked) : word_(std::move(w)) {}

    static bool is_valid_word(const std::vector<int>& w) {
        std::vector<bool> seen(w.size() + 1, false);
        for (int v : w) {
            if (v < 1 || v > static_cast<int>(w.size()) || seen[static_cast<std::size_t>(v)])
                return false;
            seen[static_cast<std::size_t>(v)] = true;
        }
        return true;
    }

    std::vector<int> word_;
};

/// Unordered transposition of two values.
struct Transposition {
    int a = 0;
    int b = 0;
    Transposition() = default;
    Transposition(int x, int y) : a(std::min(x, y)), b(std::max(x, y)) {}
    bool operator==(const Transposition&) const = default;
    auto operator<=>(const Transposition&) const = default;
};

/// The transpositions (sigma(i) sigma(i+1)) exchanging adjacent letters.
inline std::vector<Transposition> transpositions_appearing(const Perm& sigma) {
    std::vector<Transposition> out;
    out.reserve(static_cast<std::size_t>(std::max(0, sigma.size() - 1)));
    for (int i = 1; i < sigma.size(); ++i)
        out.emplace_back(sigma(i), sigma(i + 1));
    return out;
}

/// One cycle of a permutation appearing in sigma, written as the value
/// sequence starting from the earliest sigma-position, plus its support block
/// [block_start, block_start+len] in sigma-positions.
struct AppearingCycle {
    std::vector<int> values;  // cyclic sequence v0 -> v1 -> ... -> v0
    int block_start = 0;      // 1-based sigma-position of the first element
    int transposition_count() const { return static_cast<int>(values.size()) - 1; }
};

/// Decomposition of a permutation appearing in sigma: disjoint cycles ordered
/// by sigma-position, including singletons, together with the adjacent
/// transpositions realizing it.
struct AppearingDecomposition {
    std::vector<AppearingCycle> cycles;            // ordered, includes fixed points
    std::vector<Transposition> transpositions;     // the appearing transpositions used
    int length() const { return static_cast<int>(transpositions.size()); }
};

namespace detail {

/// A cycle on a contiguous sigma-block is a product of the block's adjacent
/// transpositions, each used once, exactly when its sequence in block-rank
/// space rises from the minimum to the maximum and then falls.
inline bool cycle_is_block_product(const std::vector<int>& ranks) {
    const int s = static_cast<int>(ranks.size());
    if (s <= 2) return true;
    int start = 0;
    while (ranks[static_cast<std::size_t>(start)] != 1) ++start;
    std::vector<int> seq(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i)
        seq[static_cast<std::size_t>(i)] = ranks[static_cast<std::size_t>((start + i) % s)];
    int i = 1;
    while (i < s && seq[static_cast<std::size_t>(i)] > seq[static_cast<std::size_t>(i - 1)]) ++i;
    if (seq[static_cast<std::size_t>(i - 1)] != s) return false;
    while (i < s && seq[static_cast<std::size_t>(i)] < seq[static_cast<std::size_t>(i - 1)]) ++i;
    return i == s;
}

} // namespace detail

/// Decides whether rho appears in sigma: every nontrivial disjoint cycle of
/// rho must act on a contiguous block of sigma-positions and be expressible
/// as a product of that block's adjacent transpositions, one use each.
/// Returns the ordered decomposition (with singleton cycles included) or
/// nullopt.
inline std::optional<AppearingDecomposition> appears_in(const Perm& rho, const Perm& sigma) {
    if (rho.size() != sigma.size())
        throw std::invalid_argument("appears_in: size mismatch");
    const int m = sigma.size();
    const Perm sigma_inv = sigma.inverse();

    std::vector<bool> done(static_cast<std::size_t>(m) + 1, false);
    // cycles keyed by their minimal sigma-position
    std::vector<std::pair<int, AppearingCycle>> found;
    for (int v = 1; v <= m; ++v) {
        if (done[static_cast<std::size_t>(v)]) continue;
        std::vector<int> cyc;
        int x = v;
        do {
            done[static_cast<std::size_t>(x)] = true;
            cyc.push_back(x);
            x = rho(x);
        } while (x != v);

        std::vector<int> positions;
        positions.reserve(cyc.size());
        for (int y : cyc) positions.push_back(sigma_inv(y));
        int lo = *std::min_element(positions.begin(), positions.end());
        int hi = *std::max_element(positions.begin(), positions.end());
        if (hi - lo + 1 != static_cast<int>(cyc.size())) return std::nullopt;

        // ranks within the block (1..s by sigma-position)
        std::vector<int> ranks;
        ranks.reserve(cyc.size());
        for (int p : positions) ranks.push_back(p - lo + 1);
        if (!detail::cycle_is_block_product(ranks)) return std::nullopt;

        // rewrite starting from the earliest sigma-position
        int start = 0;
        for (std::size_t i = 0; i < positions.size(); ++i)
            if (positions[i] < positions[static_cast<std::size_t>(start)])
                start = static_cast<int>(i);
        AppearingCycle ac;
        ac.block_start = lo;
        for (std::size_t i = 0; i < cyc.size(); ++i)
            ac.values.push_back(cyc[(static_cast<std::size_t>(start) + i) % cyc.size()]);
        found.emplace_back(lo, std::move(ac));
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    AppearingDecomposition dec;
    for (auto& [lo, ac] : found) {
        const int len = ac.transposition_count();
        for (int t = 0; t < len; ++t)
            dec.transpositions.emplace_back(sigma(lo + t), sigma(lo + t + 1));
        dec.cycles.push_back(std::move(ac));
    }
    return dec;
}

namespace detail {

/// Relabeling step shared by the two insertion maps: bump every value > k.
inline std::vector<int> bump_above(const Perm& sigma, int k) {
    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(sigma.size()));
    for (int i = 1; i <= sigma.size(); ++i) {
        int v = sigma(i);
        w.push_back(v > k ? v + 1 : v);
    }
    return w;
}

} // namespace detail

/// The subdivision map j_k: relabel values above k, then insert k+1
/// immediately following k.
inline Perm insert_after(const Perm& sigma, int k) {
    if (k < 1 || k > sigma.size())
        throw std::invalid_argument("insert_after: k out of range");
    std::vector<int> w = detail::bump_above(sigma, k);
    auto it = std::find(w.begin(), w.end(), k);
    w.insert(it + 1, k + 1);
    return Perm(std::move(w));
}

/// Companion insertion used on the axes where the new vertex shares its
/// coordinate with the relabeled k+2 rather than with k: relabel values
/// above k, then insert k+1 immediately before k+2.
inline Perm insert_before_successor(const Perm& sigma, int k) {
    if (k < 1 || k > sigma.size() - 1)
        throw std::invalid_argument("insert_before_successor: k out of range");
    std::vector<int> w = detail::bump_above(sigma, k);
    auto it = std::find(w.begin(), w.end(), k + 2);
    w.insert(it, k + 1);
    return Perm(std::move(w));
}

/// The subdivision map j_{k,k+1}: relabel values above k, then insert k+1 at
/// the floor-midpoint of the positions of k and k+2.
inline Perm insert_middle(const Perm& sigma, int k) {
    if (k < 1 || k > sigma.size() - 1)
        throw std::invalid_argument("insert_middle: k out of range");
    std::vector<int> w = detail::bump_above(sigma, k);
    int p1 = 0, p2 = 0;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        if (w[static_cast<std::size_t>(i)] == k) p1 = i + 1;
        if (w[static_cast<std::size_t>(i)] == k + 2) p2 = i + 1;
    }
    if (p1 > p2) std::swap(p1, p2);
    int pos = (p1 + p2) / 2 + 1;  // 1-based insertion position
    w.insert(w.begin() + (pos - 1), k + 1);
    return Perm(std::move(w));
}

} // namespace plumber
