#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "charspace/commutant.hpp"
#include "charspace/errors.hpp"
#include "charspace/oracle.hpp"
#include "support.hpp"

using namespace charspace;
using testing::bits;
using testing::module;

namespace {

Subspace span_list(std::initializer_list<const char*> rs) {
    std::vector<BitVector> vs;
    for (const char* r : rs) vs.push_back(bits(r));
    return span(vs, vs.front().dim());
}

// B^c straight from its definition: span of every unit applied to every seed.
Subspace hull_by_units(const std::vector<BitMatrix>& units, const std::vector<BitVector>& seeds, std::size_t n) {
    EchelonBuilder eb(n);
    for (const auto& a : units) {
        for (const auto& b : seeds) eb.insert(a.apply(b));
    }
    return eb.build();
}

std::set<std::vector<Word>> as_set(const std::vector<BitMatrix>& ms) {
    std::set<std::vector<Word>> out;
    for (const auto& m : ms) {
        const BitVector v = m.vectorize();
        out.emplace(v.words().begin(), v.words().end());
    }
    return out;
}

}  // namespace

TEST_CASE("endomorphism basis") {
    CHECK(endo_basis(module({1, 3})).dim() == 6);
    CHECK(endo_basis(module({1})).dim() == 1);
    const auto b3 = endo_basis(module({3}));
    CHECK(b3.dim() == 3);
    CHECK(commutant_dim(SegreChar({1, 3, 7, 7})) == 50);

    CHECK_THROWS_AS(endo_matrix(module({1, 3}), {0, 1, 0}), InvalidArgument);

    for (const auto& t : testing::partitions_up_to(10)) {
        const ModuleSpace v(t);
        const EndoBasis b = endo_basis(v);
        CHECK(b.dim() == commutant_dim(t));
        for (const auto& e : b.elements) CHECK(e * v.f_matrix() == v.f_matrix() * e);
        // Same span as the solution space of A f = f A.
        std::vector<BitVector> ours, sylv;
        for (const auto& e : b.elements) ours.push_back(e.vectorize());
        for (const auto& e : sylvester_kernel(v)) sylv.push_back(e.vectorize());
        const std::size_t nn = v.dim() * v.dim();
        CHECK(span(ours, nn) == span(sylv, nn));
        CHECK(span(ours, nn).dim() == b.dim());
    }
}

TEST_CASE("automorphism generators") {
    const auto v = module({1, 3});
    const AutGenSet g = aut_generators(v);
    CHECK(g.provenance == AutProvenance::TransvectionFamily);
    // (1,1,0) and (2,2,0) are excluded from the six commutant triples.
    CHECK(g.generators.size() == 4);
    for (const auto& s : g.generators) {
        CHECK(is_invertible(s));
        CHECK(s * v.f_matrix() == v.f_matrix() * s);
    }
    CHECK(generated_group(g.generators, 4, 1000).size() == 16);
    CHECK(aut_generators(module({1})).generators.empty());
}

TEST_CASE("unit enumeration") {
    CHECK(enumerate_aut(module({1, 3}), 1U << 20).size() == 16);
    const auto one = enumerate_aut(module({1}));
    REQUIRE(one.size() == 1);
    CHECK(one.front() == BitMatrix::identity(1));
    CHECK_THROWS_AS(enumerate_aut(module({1, 3, 7, 7})), BudgetExceeded);
    CHECK_THROWS_AS(enumerate_aut(module({1, 3}), 63), BudgetExceeded);

    for (const auto& t : testing::partitions_up_to(6)) {
        const ModuleSpace v(t);
        if (commutant_dim(t) > 14) continue;
        const auto par = enumerate_aut(v);
        const auto ser = enumerate_aut_serial(v);
        CHECK(par.size() == ser.size());
        CHECK(as_set(par) == as_set(ser));
        CHECK(as_set(par).size() == par.size());
        CHECK(enumerate_aut(v) == par);
    }
}

TEST_CASE("generated group matches the unit group") {
    for (const auto& t : testing::partitions_up_to(6)) {
        if (commutant_dim(t) > 12) continue;
        const ModuleSpace v(t);
        const auto gens = aut_generators(v).generators;
        CHECK(as_set(generated_group(gens, v.dim(), 1U << 20)) == as_set(enumerate_aut(v)));
    }
    CHECK_THROWS_AS(generated_group(aut_generators(module({1, 3})).generators, 4, 5), BudgetExceeded);
}

TEST_CASE("membership tests on the (1,3) module") {
    const auto v = module({1, 3});
    const Commutant c(v);
    const Subspace x = span_list({"1010", "0001"});
    CHECK(c.is_invariant(v.kernel_power(1)));
    CHECK_FALSE(c.is_invariant(span_list({"0100"})));
    CHECK(c.is_invariant(x));
    CHECK(c.is_characteristic(x));
    CHECK_FALSE(c.is_hyperinvariant(x));
    CHECK(c.is_hyperinvariant(subspace_intersect(v.image_power(1), v.kernel_power(1))));
}

TEST_CASE("a cyclic subspace in (1,2,2) is not characteristic") {
    const auto v = module({1, 2, 2});
    const Subspace x = cyclic(v, v.generator(0) ^ v.basis_vector(1, 1));
    CHECK_FALSE(is_characteristic(v, x));
}

TEST_CASE("characteristic hulls") {
    const auto v = module({1, 3});
    const Commutant c(v);
    const Subspace x = c.hull(bits("1010"));
    CHECK(testing::element_words(x) == testing::element_words(span_list({"1010", "1011", "0001"})));
    CHECK(x.dim() == 2);
    CHECK(c.hull(v.zero()).is_zero());
    CHECK(c.hull(v.basis_vector(1, 1)) == span_list({"0010", "0001"}));
    CHECK(c.hull(v.basis_vector(1, 1)) ==
          subspace_intersect(v.image_power(1), v.kernel_power(2)));

    const auto w = module({1, 3, 5});
    const BitVector z = w.generator(0) ^ w.basis_vector(1, 1) ^ w.basis_vector(2, 2);
    const std::vector<BitVector> spanning{z, w.basis_vector(1, 2), w.basis_vector(2, 3)};
    CHECK(characteristic_hull(w, std::vector<BitVector>{z}) == testing::submodule(w, spanning));
}

TEST_CASE("hulls agree with the definition") {
    std::mt19937_64 rng(21);
    for (const auto& t : testing::partitions_up_to(6)) {
        if (commutant_dim(t) > 14) continue;
        const ModuleSpace v(t);
        const Commutant c(v);
        const auto units = enumerate_aut(v);
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<BitVector> seeds;
            for (std::size_t k = 0; k < 1 + rng() % 2; ++k) seeds.push_back(testing::random_vector(rng, v.dim()));
            const Subspace h = c.hull(seeds);
            CHECK(h == hull_by_units(units, seeds, v.dim()));
            CHECK(c.is_characteristic(h));
            CHECK(c.hull(h) == h);
            // Monotone: adding a seed can only enlarge the hull.
            seeds.push_back(testing::random_vector(rng, v.dim()));
            CHECK(h.is_subspace_of(c.hull(seeds)));
        }
    }
}

TEST_CASE("orbits") {
    const auto v = module({1, 3});
    const Commutant c(v);
    CHECK(c.orbit(v.zero()).size() == 1);
    const auto oz = c.orbit(bits("1010"));
    CHECK(oz == std::unordered_set<BitVector>{bits("1010"), bits("1011")});

    std::unordered_set<BitVector> expect;
    for (const char* y : {"0100", "0110", "0101", "0111"}) {
        expect.insert(bits(y));
        expect.insert(bits(y) ^ bits("1000"));
    }
    CHECK(c.orbit(bits("0100")) == expect);
    CHECK_THROWS_AS(c.orbit(bits("0100"), 3), OrbitTooLarge);

    // The orbit is the image of x under every unit.
    for (const auto& t : testing::partitions_up_to(5)) {
        if (commutant_dim(t) > 14) continue;
        const ModuleSpace m(t);
        const Commutant cm(m);
        const auto units = enumerate_aut(m);
        for (const auto& x : testing::all_vectors(m.dim())) {
            std::unordered_set<BitVector> img;
            for (const auto& a : units) img.insert(a.apply(x));
            CHECK(cm.orbit(x) == img);
        }
    }
}

TEST_CASE("automorphisms preserve height and exponent") {
    for (const auto& t : testing::partitions_up_to(6)) {
        const ModuleSpace v(t);
        const auto gens = aut_generators(v).generators;
        for (const auto& x : testing::all_vectors(v.dim())) {
            for (const auto& g : gens) {
                const BitVector y = g.apply(x);
                CHECK(height(v, y) == height(v, x));
                CHECK(exponent(v, y) == exponent(v, x));
            }
        }
    }
}

TEST_CASE("largest hyperinvariant subspace inside") {
    const auto v = module({1, 3});
    const Commutant c(v);
    const Subspace x = c.hull(bits("1010"));
    CHECK(c.largest_hyperinvariant_inside(x) == span_list({"0001"}));
    CHECK(c.largest_hyperinvariant_inside(Subspace::full(4)) == Subspace::full(4));
    CHECK(c.largest_hyperinvariant_inside(Subspace(4)).is_zero());
    CHECK_THROWS_AS(c.largest_hyperinvariant_inside(span_list({"0100"})), PreconditionViolated);
}

TEST_CASE("hull of a single vector and gaps in its indicator") {
    // A gap-free H(x) always gives a hyperinvariant hull. The converse can
    // fail with repeated sizes, e.g. u1 + f u3 in (1,1,3); with distinct
    // sizes it holds for n <= 7.
    for (const auto& t : testing::partitions_up_to(7)) {
        const ModuleSpace v(t);
        const Commutant c(v);
        const bool distinct = t.unrepeated_parts().size() == t.count();
        for (const auto& x : testing::all_vectors(v.dim())) {
            if (x.is_zero()) continue;
            const bool hinv = c.is_hyperinvariant(c.hull(x));
            const bool gap = has_gap(indicator(v, x));
            if (!gap) CHECK_MESSAGE(hinv, t.to_string() << " x=" << x.to_string());
            if (distinct) CHECK_MESSAGE(hinv == !gap, t.to_string() << " x=" << x.to_string());
        }
    }
}
