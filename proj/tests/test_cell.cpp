#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "plumber/cell.hpp"
#include "plumber/isotopy.hpp"

using namespace plumber;

namespace {

Perm cycles_to_perm(int m, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> w(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = i + 1;
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i)
            w[static_cast<std::size_t>(c[i] - 1)] = c[(i + 1) % c.size()];
    return Perm(w);
}

CellName top(int n, const std::string& x, const std::string& y, const std::string& z) {
    return CellName(n, {Perm::parse(x), Perm::parse(y), Perm::parse(z)});
}

} // namespace

TEST_CASE("codimension bookkeeping") {
    CellName c = top(5, "1342", "2413", "2413");
    CHECK(c.is_top());
    CHECK(c.dimension() == 12);

    Perm rho = cycles_to_perm(4, {{1, 3, 4}});  // appears in 1342: block 134 at front
    CellName f(5, {Perm::parse("1342"), Perm::parse("2413"), Perm::parse("2413")},
               {rho, Perm::identity(4), Perm::identity(4)});
    CHECK(f.codimension() == 2);
    CHECK_THROWS_AS(CellName(5, {Perm::parse("1234"), Perm::parse("1234"), Perm::parse("1234")},
                             {cycles_to_perm(4, {{1, 3}}), Perm::identity(4), Perm::identity(4)}),
                    std::invalid_argument);
}

TEST_CASE("label_count instances") {
    // two disjoint transpositions split across axes -> 4 names
    CellName c2(4, {Perm::parse("123"), Perm::parse("123"), Perm::parse("123")},
                {cycles_to_perm(3, {{1, 2}}), cycles_to_perm(3, {{2, 3}}), Perm::identity(3)});
    CHECK(label_count(c2) == 4);

    CellName ctop = top(4, "123", "231", "312");
    CHECK(label_count(ctop) == 1);

    // rho_x a 3-cycle, rho_y a transposition: 3! * 2! = 12
    CellName c12(7, {Perm::parse("312546"), Perm::parse("123456"), Perm::parse("123456")},
                 {cycles_to_perm(6, {{1, 2, 3}}), cycles_to_perm(6, {{4, 5}}), Perm::identity(6)});
    CHECK(label_count(c12) == 12);
}

TEST_CASE("canonical_name identifies equivalent labels") {
    CellName ctop = top(4, "213", "123", "321");
    CHECK(canonical_name(ctop) == ctop);

    // e(sigma; tau_x) and e(tau sigma; tau_x) name the same face
    Perm sigma = Perm::parse("1342");
    Perm tau_sigma = sigma.swap_positions(2);  // exchange letters at 2,3
    std::vector<int> rho_word = {1, 2, 3, 4};
    std::swap(rho_word[static_cast<std::size_t>(sigma(2) - 1)],
              rho_word[static_cast<std::size_t>(sigma(3) - 1)]);
    Perm tau(rho_word);
    CellName f1(5, {sigma, Perm::parse("2413"), Perm::parse("2413")},
                {tau, Perm::identity(4), Perm::identity(4)});
    CellName f2(5, {tau_sigma, Perm::parse("2413"), Perm::parse("2413")},
                {tau, Perm::identity(4), Perm::identity(4)});
    CHECK(canonical_name(f1) == canonical_name(f2));
}

TEST_CASE("a 3-cycle face has one canonical image over all labels") {
    // block {1,2,3} at the front of sigma_x, n=4: all 3! block orders, and for
    // each order both unimodal 3-cycles, must canonicalize identically.
    std::vector<std::vector<int>> orders = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                            {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    std::set<std::string> canon;
    int raw_labels = 0;
    for (const auto& ord : orders) {
        Perm sx(ord);
        for (const auto& rho : {cycles_to_perm(3, {{ord[0], ord[1], ord[2]}}),
                                cycles_to_perm(3, {{ord[0], ord[2], ord[1]}})}) {
            auto dec = appears_in(rho, sx);
            if (!dec) continue;
            CellName f(4, {sx, Perm::parse("123"), Perm::parse("123")},
                       {rho, Perm::identity(3), Perm::identity(3)});
            canon.insert(canonical_name(f).str());
            ++raw_labels;
        }
    }
    CHECK(canon.size() == 1);
    CHECK(raw_labels > 1);
}

TEST_CASE("label_count equals the top cells containing the face (n<=4)") {
    // exhaustive: for every codim-1 face of every top cell of P_4, the face
    // lies in the closure of exactly label_count tops.
    const int n = 4;
    CellTables tables(n);
    for (std::uint64_t idx = 0; idx < tables.total_cells(); ++idx) {
        CellName c = tables.cell_at(idx);
        for (const auto& f : codim1_faces(c)) {
            auto canon = canonical_name(f).str();
            // count top cells t such that f canonicalizes to a face of t
            std::uint64_t containing = 0;
            for (std::uint64_t j = 0; j < tables.total_cells(); ++j) {
                CellName t = tables.cell_at(j);
                for (const auto& g : codim1_faces(t))
                    if (canonical_name(g).str() == canon) { ++containing; break; }
            }
            CHECK(containing == label_count(f));
        }
        if (idx >= 8) break;  // 9 cells x 6 faces x 216 tops is plenty
    }
}

TEST_CASE("codim1 face count and sharing") {
    CHECK(codim1_faces(top(3, "12", "12", "12")).size() == 3);
    CHECK(codim1_faces(top(5, "1342", "2413", "2413")).size() == 9);
}

TEST_CASE("representative points") {
    CellName id4 = top(4, "123", "123", "123");
    CurvePoint p = representative_point(id4);
    for (int i = 0; i <= 4; ++i)
        for (int a = 0; a < 3; ++a)
            CHECK(p.coord(i, static_cast<Axis>(a)) == Rat(i, 4));

    CellName tre = top(5, "1342", "2413", "2413");
    CurvePoint q = representative_point(tre);
    CHECK(q.coord(1, Axis::X) == Rat(1, 5));
    CHECK(q.coord(2, Axis::X) == Rat(4, 5));
    CHECK(q.coord(3, Axis::X) == Rat(2, 5));
    CHECK(q.coord(4, Axis::X) == Rat(3, 5));

    // degenerate axis: cycles of (4 5)(1 2 3) in 312546 index as 1,1,1,2,2,3
    CellName f(7, {Perm::parse("312546"), Perm::parse("123456"), Perm::parse("123456")},
               {cycles_to_perm(6, {{1, 2, 3}, {4, 5}}), Perm::identity(6), Perm::identity(6)});
    CurvePoint r = representative_point(f);
    CHECK(r.coord(1, Axis::X) == Rat(1, 4));
    CHECK(r.coord(2, Axis::X) == Rat(1, 4));
    CHECK(r.coord(3, Axis::X) == Rat(1, 4));
    CHECK(r.coord(4, Axis::X) == Rat(2, 4));
    CHECK(r.coord(5, Axis::X) == Rat(2, 4));
    CHECK(r.coord(6, Axis::X) == Rat(3, 4));
}

TEST_CASE("representative point lies in its cell") {
    // top cells of P_4: coordinate multisets are {1/4..3/4} and the ordering
    // respects sigma; face cells satisfy their equalities exactly.
    CellTables tables(4);
    for (std::uint64_t idx = 0; idx < tables.total_cells(); ++idx) {
        CellName c = tables.cell_at(idx);
        CurvePoint p = representative_point(c);
        CHECK(cell_of(p) == canonical_name(c));
        for (const auto& f : codim1_faces(c)) {
            CurvePoint q = representative_point(f);
            CHECK(cell_of(q) == canonical_name(f));
        }
    }
}

TEST_CASE("top cell enumeration is exhaustive and distinct") {
    for (int n : {3, 4, 5}) {
        CellTables tables(n);
        std::uint64_t want = Perm::factorial_of(n - 1);
        want = want * want * want;
        CHECK(tables.total_cells() == want);
        std::set<std::string> names;
        std::uint64_t step = std::max<std::uint64_t>(1, tables.total_cells() / 500);
        for (std::uint64_t i = 0; i < tables.total_cells(); i += step)
            names.insert(tables.cell_at(i).str());
        CHECK(names.size() == (tables.total_cells() + step - 1) / step);
    }
}

TEST_CASE("cell text round-trip") {
    CellName c = top(5, "1342", "2413", "2413");
    CHECK(c.str() == "[1342_x,2413_y,2413_z]");
    CHECK(CellName::parse(c.str(), 5) == c);
    CHECK(CellName::parse(" [ 1342_x , 2413_y , 2413_z ] ", 5) == c);

    CellName f(5, {Perm::parse("1342"), Perm::parse("2413"), Perm::parse("2413")},
               {cycles_to_perm(4, {{1, 3}}), Perm::identity(4), Perm::identity(4)});
    CHECK(f.str() == "[1342_x,2413_y,2413_z];(1 3)_x");
    CHECK(CellName::parse(f.str(), 5) == f);
    CHECK_THROWS_AS(CellName::parse("[12_x,12_y]", 3), std::invalid_argument);
}
