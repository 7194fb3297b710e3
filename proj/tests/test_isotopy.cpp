#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "plumber/isotopy.hpp"

using namespace plumber;

namespace {

CellName top(int n, const std::string& x, const std::string& y, const std::string& z) {
    return CellName(n, {Perm::parse(x), Perm::parse(y), Perm::parse(z)});
}

std::multiset<std::uint64_t> sizes_of(const Census& c) {
    std::multiset<std::uint64_t> out;
    for (const auto& comp : c.components()) out.insert(comp.size);
    return out;
}

} // namespace

TEST_CASE("neighbors basics") {
    CellName id3 = top(3, "12", "12", "12");
    auto nb = neighbors(id3);
    CHECK(nb.size() == 3);  // all three candidate faces are crossable at n=3

    // the size-1 right-trefoil component of K_5 has no neighbors
    CHECK(neighbors(top(5, "2431", "2413", "4213")).empty());
}

TEST_CASE("neighbor relation is symmetric (n=4 exhaustive)") {
    CellTables tables(4);
    std::vector<std::uint64_t> nb, back;
    for (std::uint64_t i = 0; i < tables.total_cells(); ++i) {
        tables.neighbor_indices(i, nb);
        for (std::uint64_t j : nb) {
            tables.neighbor_indices(j, back);
            CHECK(std::find(back.begin(), back.end(), i) != back.end());
        }
    }
}

TEST_CASE("K_2 and K_3 censuses") {
    Census c2 = Census::run(2);
    CHECK(c2.total_cells() == 1);
    CHECK(c2.components().size() == 1);

    Census c3 = Census::run(3);
    CHECK(c3.total_cells() == 8);
    CHECK(c3.components().size() == 1);
    CHECK(c3.components()[0].size == 8);
}

TEST_CASE("K_4 census is a single component of 216") {
    Census c = Census::run(4);
    CHECK(c.components().size() == 1);
    CHECK(c.components()[0].size == 216);
    CHECK(c.components()[0].representative == 0);
}

TEST_CASE("K_5 census matches the published sizes") {
    Census c = Census::run(5);
    REQUIRE(c.components().size() == 7);
    CHECK(sizes_of(c) == std::multiset<std::uint64_t>{13728, 31, 31, 16, 16, 1, 1});

    const CellTables& t = c.tables();
    auto size_at = [&](const CellName& cell) {
        return c.component_size(t.index_of(cell));
    };
    CHECK(size_at(top(5, "1234", "1234", "1234")) == 13728);
    CHECK(size_at(top(5, "1342", "2413", "2413")) == 31);
    CHECK(size_at(top(5, "1342", "2413", "3124")) == 16);
    CHECK(size_at(top(5, "2431", "2413", "4213")) == 1);
    CHECK(size_at(top(5, "1342", "3142", "2413")) == 31);
    CHECK(size_at(top(5, "1342", "3142", "3124")) == 16);
    CHECK(size_at(top(5, "2431", "3142", "4213")) == 1);

    // the two trefoil components of sizes 31 and 16 are distinct
    CHECK_FALSE(c.same_component(t.index_of(top(5, "1342", "2413", "2413")),
                                 t.index_of(top(5, "1342", "2413", "3124"))));
    CHECK_FALSE(c.same_component(t.index_of(top(5, "1342", "2413", "2413")),
                                 t.index_of(top(5, "1342", "3142", "2413"))));
}

TEST_CASE("same_component without a census") {
    CellName a = top(5, "1342", "2413", "2413");
    CHECK(same_component(a, a));
    CHECK_FALSE(same_component(a, top(5, "1342", "3142", "2413")));
    CHECK_FALSE(same_component(a, top(5, "1342", "2413", "3124")));
    CHECK(same_component(top(4, "123", "123", "123"), top(4, "321", "321", "321")));
}

TEST_CASE("mirror is an involution and a y-axis graph automorphism") {
    CellName c = top(5, "1342", "2413", "2413");
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z})
        CHECK(mirror(mirror(c, ax), ax) == c);

    for (int n : {3, 4, 5}) {
        CellTables tables(n);
        std::uint64_t step = n == 5 ? 131 : 1;
        for (std::uint64_t i = 0; i < tables.total_cells(); i += step) {
            CellName cell = tables.cell_at(i);
            auto nb = neighbors(cell);
            std::set<std::string> mirrored;
            for (const auto& x : nb) mirrored.insert(mirror(x).str());
            std::set<std::string> of_mirror;
            for (const auto& x : neighbors(mirror(cell))) of_mirror.insert(x.str());
            CHECK(mirrored == of_mirror);
        }
    }
}

TEST_CASE("mirror pairs components of K_5 and fixes the unknot component") {
    Census c = Census::run(5);
    const CellTables& t = c.tables();
    std::map<std::uint64_t, std::uint64_t> image;  // root -> mirrored root
    for (std::uint64_t i = 0; i < t.total_cells(); ++i) {
        std::uint64_t root = c.component_root(i);
        std::uint64_t mroot = c.component_root(t.index_of(mirror(t.cell_at(i))));
        auto it = image.find(root);
        if (it == image.end()) image[root] = mroot;
        else CHECK(it->second == mroot);
    }
    for (auto [root, mroot] : image) {
        CHECK(c.component_size(root) == c.component_size(mroot));
        CHECK(image.at(mroot) == root);
    }
    std::uint64_t unknot = c.component_root(t.index_of(top(5, "1234", "1234", "1234")));
    CHECK(image.at(unknot) == unknot);
}

TEST_CASE("census is deterministic across thread counts") {
    CensusOptions one, four;
    one.threads = 1;
    four.threads = 4;
    Census a = Census::run(4, one);
    Census b = Census::run(4, four);
    REQUIRE(a.components().size() == b.components().size());
    for (std::size_t i = 0; i < a.components().size(); ++i) {
        CHECK(a.components()[i].size == b.components()[i].size);
        CHECK(a.components()[i].representative == b.components()[i].representative);
    }
}

TEST_CASE("census memory budget is enforced") {
    CensusOptions tiny;
    tiny.memory_budget = 16;
    CHECK_THROWS_AS(Census::run(4, tiny), resource_limit_error);
}
