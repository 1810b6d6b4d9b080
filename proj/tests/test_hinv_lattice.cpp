#include <doctest.h>

#include <set>

#include "charspace/commutant.hpp"
#include "charspace/errors.hpp"
#include "charspace/hinv_lattice.hpp"
#include "support.hpp"

using namespace charspace;
using testing::bits;
using testing::module;

namespace {

// L(t) by filtering the full box prod [0, t_i].
std::vector<LatticeTuple> box_filter(const SegreChar& t) {
    std::vector<LatticeTuple> out;
    LatticeTuple r(t.count(), 0);
    while (true) {
        if (in_lattice(t, r)) out.push_back(r);
        std::size_t i = t.count();
        while (i-- > 0) {
            if (r[i] < t[i]) {
                ++r[i];
                break;
            }
            r[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

}  // namespace

TEST_CASE("lattice tuples") {
    const std::vector<LatticeTuple> expect{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {1, 3}};
    CHECK(lattice_tuples(SegreChar({1, 3})) == expect);
    CHECK(lattice_tuples(SegreChar({4})).size() == 5);
    CHECK(lattice_tuples(SegreChar({1, 3, 7, 7})).size() == 30);
    CHECK(in_lattice(SegreChar({1, 3}), {1, 2}));
    CHECK_FALSE(in_lattice(SegreChar({1, 3}), {1, 0}));
    CHECK_FALSE(in_lattice(SegreChar({1, 3}), {0, 3}));
    CHECK_FALSE(in_lattice(SegreChar({1, 3}), {0}));

    for (const auto& t : testing::partitions_up_to(9)) CHECK(lattice_tuples(t) == box_filter(t));
}

TEST_CASE("count formula") {
    CHECK(count_hinv(SegreChar({1, 3})) == 6);
    CHECK(count_hinv(SegreChar({1, 3, 7, 7})) == 30);
    CHECK(count_hinv(SegreChar({6})) == 7);
    for (const auto& t : testing::partitions_up_to(12)) {
        CHECK(count_hinv(t) == lattice_tuples(t).size());
    }
}

TEST_CASE("W(r)") {
    const auto v = module({1, 3});
    CHECK(w_subspace(v, {0, 0}) == Subspace::full(4));
    CHECK(w_subspace(v, {1, 1}) == span(std::vector<BitVector>{bits("0010"), bits("0001")}, 4));
    CHECK(w_subspace(v, {0, 1}) == span(std::vector<BitVector>{bits("1000"), bits("0010"), bits("0001")}, 4));
    CHECK(w_subspace(v, {1, 3}).is_zero());
    CHECK_THROWS_AS(w_subspace(v, {1, 0}), InvalidArgument);
}

TEST_CASE("W(r) are distinct and hyperinvariant") {
    for (const auto& t : testing::partitions_up_to(9)) {
        const ModuleSpace v(t);
        const Commutant c(v);
        const auto elems = enumerate_hinv(v);
        CHECK(elems.size() == count_hinv(t));
        std::set<Subspace> distinct;
        for (const auto& e : elems) {
            distinct.insert(e.w);
            CHECK(c.is_hyperinvariant(e.w));
            CHECK(c.is_characteristic(e.w));
        }
        CHECK(distinct.size() == elems.size());
    }
}

TEST_CASE("lattice isomorphism") {
    CHECK(lattice_iso_check(module({1, 3})));
    CHECK(lattice_iso_check(module({5})));
    CHECK(lattice_iso_check(module({2, 2})));
    for (const auto& t : testing::partitions_up_to(8)) CHECK(lattice_iso_check(ModuleSpace(t)));
}

TEST_CASE("Hasse covers") {
    const auto tuples = lattice_tuples(SegreChar({1, 3}));
    const auto covers = hasse_covers(tuples);
    // (0,0)<(0,1)<(0,2)<(1,2)<(1,3), (0,1)<(1,1)<(1,2)
    CHECK(covers.size() == 6);
    for (const auto& [a, b] : covers) CHECK(precedes(tuples[a], tuples[b]));

    const auto chain = lattice_tuples(SegreChar({4}));
    CHECK(hasse_covers(chain).size() == 4);
}
