#include <doctest.h>

#include <set>

#include "charspace/classify.hpp"
#include "charspace/commutant.hpp"
#include "charspace/errors.hpp"
#include "charspace/hinv_lattice.hpp"
#include "support.hpp"

using namespace charspace;
using testing::bits;
using testing::module;

namespace {

std::string violation(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ConstraintViolation& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("shoda") {
    const auto a = shoda(SegreChar({1, 3}));
    CHECK(a.satisfied);
    CHECK(a.R == 1U);
    CHECK(a.S == 3U);
    CHECK_FALSE(shoda(SegreChar({1, 2})).satisfied);
    CHECK_FALSE(shoda(SegreChar({2, 2, 5})).satisfied);
    const auto b = shoda(SegreChar({1, 3, 7, 7}));
    CHECK(b.satisfied);
    CHECK(b.R == 1U);
    CHECK(b.S == 3U);
    const auto c = shoda(SegreChar({2, 3, 5, 9}));
    CHECK(c.R == 2U);
    CHECK(c.S == 5U);
}

TEST_CASE("construct_thm12") {
    const auto v = module({1, 3});
    const Subspace x = construct_thm12(v, 1, 3, 1, 2);
    CHECK(x == span(std::vector<BitVector>{bits("1010"), bits("0001")}, 4));
    CHECK(violation([&] { construct_thm12(v, 1, 3, 1, 3); }).find("R - s < S - q") != std::string::npos);
    CHECK(violation([&] { construct_thm12(v, 1, 3, 0, 2); }).find("0 < s") != std::string::npos);
    CHECK(violation([&] { construct_thm12(v, 1, 3, 2, 3); }).find("s <= R") != std::string::npos);
    CHECK(violation([&] { construct_thm12(v, 1, 3, 1, 1); }).find("s < q") != std::string::npos);
    CHECK_THROWS_AS(construct_thm12(module({1, 2}), 1, 2, 1, 2), ConstraintViolation);
    CHECK_THROWS_AS(construct_thm12(module({3, 3}), 3, 3, 1, 2), ConstraintViolation);

    const auto w = module({2, 5});
    const Subspace y = construct_thm12(w, 2, 5, 2, 3);
    CHECK(y.dim() == 4);
    CHECK(segre_of_restriction(w, y) == SegreChar({1, 3}));
}

TEST_CASE("two-generator classification") {
    const auto a = classify_two_generator(module({1, 3}));
    REQUIRE(a.size() == 1);
    CHECK(a[0].mu == std::vector<std::size_t>{0, 1});
    CHECK(a[0].dim() == 2);

    const auto b = classify_two_generator(module({2, 5}));
    REQUIRE(b.size() == 4);
    const std::vector<std::vector<std::size_t>> mus{{1, 3}, {1, 2}, {0, 2}, {0, 1}};
    const std::vector<std::size_t> dims{2, 3, 4, 5};
    std::set<Subspace> distinct;
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(b[i].mu == mus[i]);
        CHECK(b[i].dim() == dims[i]);
        distinct.insert(b[i].subspace);
    }
    CHECK(distinct.size() == 4);
    CHECK_THROWS_AS(classify_two_generator(module({1, 2})), PreconditionViolated);
    CHECK_THROWS_AS(classify_two_generator(module({1, 3, 5})), PreconditionViolated);
}

TEST_CASE("E ⊕ G split") {
    const auto v = module({1, 3, 7, 7});
    const EGSplit s = split_EG(v);
    CHECK(s.e_blocks == std::vector<std::size_t>{0, 1});
    CHECK(s.g_blocks == std::vector<std::size_t>{2, 3});
    CHECK(s.E.dim() == 4);
    CHECK(s.G.dim() == 14);

    const auto w = module({2, 2});
    CHECK(split_EG(w).E.is_zero());
    CHECK(split_EG(w).G == Subspace::full(4));
    const auto u = module({1, 3});
    CHECK(split_EG(u).E == Subspace::full(4));
    CHECK(split_EG(u).G.is_zero());
}

TEST_CASE("decomposition") {
    const auto v = module({1, 3});
    CHECK(check_decomposition(v, Commutant(v).hull(bits("1010"))));

    // X = <u1 + f u2> in t = (1,2,2) is invariant but not characteristic.
    const auto w = module({1, 2, 2});
    const Subspace x = cyclic(w, w.generator(0) ^ w.basis_vector(1, 1));
    CHECK_FALSE(decomposition_holds(w, x));
    CHECK_THROWS_AS(check_decomposition(w, x), PreconditionViolated);
}

TEST_CASE("no unrepeated sizes") {
    CHECK(classify_no_unrepeated(module({2, 2})).size() == 3);
    const auto ones = classify_no_unrepeated(module({1, 1}));
    REQUIRE(ones.size() == 2);
    CHECK(ones[0] == Subspace::full(2));
    CHECK(ones[1].is_zero());
    CHECK(classify_no_unrepeated(module({3, 3})).size() == 4);
    CHECK_THROWS_AS(classify_no_unrepeated(module({1, 3})), PreconditionViolated);
}

TEST_CASE("exactly two unrepeated sizes") {
    SUBCASE("(1,3,7,7)") {
        const auto v = module({1, 3, 7, 7});
        const Commutant c(v);
        const auto entries = classify_two_unrepeated(v);
        REQUIRE(entries.size() == 4);
        const Subspace x = c.hull(v.generator(0) ^ v.basis_vector(1, 1));
        const auto hull_mu = [&](std::size_t j) {
            return c.hull(v.generator(0) ^ v.basis_vector(1, 1) ^ v.basis_vector(2, j) ^ v.basis_vector(3, j));
        };
        CHECK(hull_mu(5) == x);
        CHECK(hull_mu(6) == x);
        std::set<Subspace> got;
        for (const auto& e : entries) {
            got.insert(e.subspace);
            CHECK(c.is_characteristic(e.subspace));
            CHECK_FALSE(c.is_hyperinvariant(e.subspace));
            CHECK(c.is_hyperinvariant(e.x_h));
            CHECK(e.x_h.is_subspace_of(e.subspace));
            CHECK(e.x_h != e.subspace);
            // The kept mu indexes X_H through the shifted lattice tuple.
            std::vector<std::size_t> shifted = e.mu;
            ++shifted[0];
            ++shifted[1];
            CHECK(w_subspace(v, shifted) == e.x_h);
        }
        const std::set<Subspace> expect{hull_mu(2), hull_mu(3), hull_mu(4), x};
        CHECK(got == expect);
    }
    SUBCASE("(1,3)") { CHECK(classify_two_unrepeated(module({1, 3})).size() == 1); }
    SUBCASE("Shoda fails") { CHECK(classify_two_unrepeated(module({1, 2, 5, 5})).empty()); }
    SUBCASE("three unrepeated") {
        CHECK_THROWS_AS(classify_two_unrepeated(module({1, 3, 5})), MoreThanTwoUnrepeated);
    }
}

TEST_CASE("k unrepeated construction") {
    const auto v = module({1, 3, 5});
    const Subspace x = construct_k_unrepeated(v, {{0, 0}, {1, 1}, {2, 2}});
    const BitVector z = v.generator(0) ^ v.basis_vector(1, 1) ^ v.basis_vector(2, 2);
    CHECK(x == testing::submodule(v, {z, v.basis_vector(1, 2), v.basis_vector(2, 3)}));
    CHECK(x.dim() == 4);

    const auto u = module({1, 3});
    CHECK(construct_k_unrepeated(u, {{0, 0}, {1, 1}}) == Commutant(u).hull(bits("1010")));

    CHECK(violation([&] { construct_k_unrepeated(v, {{0, 0}, {1, 2}, {2, 3}}); }).find("t - mu") !=
          std::string::npos);
    CHECK(violation([&] { construct_k_unrepeated(v, {{0, 1}, {1, 2}}); }).find("mu < t") != std::string::npos);
    CHECK(violation([&] { construct_k_unrepeated(v, {{1, 1}, {2, 1}}); }).find("mu increasing") !=
          std::string::npos);
    CHECK_THROWS_AS(construct_k_unrepeated(v, {{0, 0}}), ConstraintViolation);
    CHECK_THROWS_AS(construct_k_unrepeated(module({1, 3, 3}), {{0, 0}, {1, 1}}), ConstraintViolation);
}

TEST_CASE("Baer normal form") {
    const auto v = module({1, 3});
    const Commutant c(v);
    const auto a = baer_normal_form(v, bits("1010"));
    CHECK(a.k1 == 0U);
    CHECK(a.k2 == 1U);
    const auto z = baer_normal_form(v, v.zero());
    CHECK_FALSE(z.k1.has_value());
    CHECK_FALSE(z.k2.has_value());
    const auto b = baer_normal_form(v, bits("0001"));
    CHECK_FALSE(b.k1.has_value());
    CHECK(b.k2 == 2U);
    CHECK_THROWS_AS(baer_normal_form(module({2, 2}), BitVector(4)), PreconditionViolated);

    for (const auto& t : {SegreChar({1, 3}), SegreChar({2, 4}), SegreChar({1, 5}), SegreChar({2, 3})}) {
        const ModuleSpace m(t);
        const Commutant cm(m);
        for (const auto& x : testing::all_vectors(m.dim())) CHECK(cm.orbit(x).count(baer_normal_form(m, x).vector));
    }
}

TEST_CASE("extending from E") {
    const auto v = module({1, 3, 7, 7});
    const Commutant c(v);
    const EGSplit sp = split_EG(v);
    const auto entries = classify_two_unrepeated(v);
    std::set<Subspace> expect;
    for (const auto& e : entries) expect.insert(e.subspace);

    for (const auto& e : entries) {
        const Subspace y = subspace_intersect(e.subspace, sp.E);
        const Subspace w = subspace_intersect(e.subspace, sp.G);
        const Subspace y_s = subspace_intersect(e.x_h, sp.E);
        const Subspace x = extend_from_E(v, y, w, y_s);
        CHECK(x == e.subspace);
        CHECK(expect.count(x) == 1);
    }

    // With G = 0 and W = 0 the extension is Y itself.
    const auto u = module({1, 3});
    const Subspace y = Commutant(u).hull(bits("1010"));
    CHECK(extend_from_E(u, y, Subspace(4), Subspace(4)) == y);

    // Hyperinvariant pieces give a hyperinvariant result.
    const Subspace yh = subspace_intersect(w_subspace(v, {1, 1, 1, 1}), sp.E);
    const Subspace wh = subspace_intersect(w_subspace(v, {1, 1, 1, 1}), sp.G);
    CHECK(c.is_hyperinvariant(extend_from_E(v, yh, wh, yh)));

    CHECK_THROWS_AS(extend_from_E(v, sp.G, Subspace(v.dim()), Subspace(v.dim())), PreconditionViolated);
}
